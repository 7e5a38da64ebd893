#include "givens/random.hpp"

#include <cmath>

namespace givens {

namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            m(r, c) = {re, normal(rng)};
        }
    return m;
}

}  // namespace

Matrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
    const Eigen::HouseholderQR<Matrix> qr(gaussian(d, d, rng));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) q.col(i) *= r(i, i) / mag;
    }
    return q;
}

SubspaceState random_state(const SubspaceMap& map, std::mt19937_64& rng) {
    const Matrix v = gaussian(static_cast<Eigen::Index>(map.dim()), 1, rng);
    const double norm = v.norm();
    Amplitudes amps(map.dim());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = v(static_cast<Eigen::Index>(i), 0) / norm;
    return SubspaceState(map, std::move(amps));
}

}  // namespace givens
