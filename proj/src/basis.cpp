#include "givens/basis.hpp"

#include <cmath>

namespace givens {

BasisState::BasisState(int n, std::uint32_t bits) : n_(n), bits_(bits) {
    if (n < 0 || n > 32) throw DomainError("register size out of range");
    if (n < 32 && (bits >> n) != 0) throw DomainError("bits exceed register size");
}

BasisState BasisState::from_string(std::string_view s) {
    if (s.size() > 32) throw DomainError("occupation string longer than 32 wires");
    std::uint32_t bits = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw DomainError("occupation string must contain only 0 and 1: " + std::string(s));
        bits = (bits << 1) | static_cast<std::uint32_t>(ch == '1');
    }
    return BasisState(static_cast<int>(s.size()), bits);
}

BasisState BasisState::with_bit(int wire, int value) const {
    const auto m = static_cast<std::uint32_t>(wire_mask(n_, wire));
    return BasisState(n_, value ? (bits_ | m) : (bits_ & ~m));
}

std::string BasisState::to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int w = 0; w < n_; ++w)
        if (bit(w)) s[static_cast<std::size_t>(w)] = '1';
    return s;
}

int hamming_distance(const BasisState& x, const BasisState& y) {
    if (x.size() != y.size()) throw DomainError("register sizes differ");
    return popcount(x.bits() ^ y.bits());
}

int excitation_order(const BasisState& x, const BasisState& y) {
    if (x.weight() != y.weight())
        throw DomainError("excitation order needs equal weights: " + x.to_string() + " vs " +
                          y.to_string());
    return hamming_distance(x, y) / 2;
}

BasisState reference_state(int n, int k) {
    if (k < 0 || k > n) throw DomainError("particle count out of range");
    std::uint32_t bits = 0;
    for (int w = 0; w < k; ++w) bits |= static_cast<std::uint32_t>(wire_mask(n, w));
    return BasisState(n, bits);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

SubspaceMap::SubspaceMap(int n, int k) : n_(n), k_(k) {
    if (n < 1 || n > kMaxSubspaceWires)
        throw DomainError("register size must be in 1.." + std::to_string(kMaxSubspaceWires));
    if (k < 0 || k > n) throw DomainError("particle count out of range");

    // Gosper's hack walks weight-k values in increasing numeric order, which is
    // lexicographic order of the printed strings.
    auto t = std::make_shared<Tables>();
    auto& states = t->states;
    states.reserve(binomial(n, k));
    t->lookup.assign(std::size_t{1} << n, -1);
    if (k == 0) {
        states.push_back(0);
    } else {
        std::uint64_t v = (std::uint64_t{1} << k) - 1;
        const std::uint64_t limit = std::uint64_t{1} << n;
        while (v < limit) {
            states.push_back(static_cast<std::uint32_t>(v));
            const std::uint64_t s = v | (v - 1);
            v = (s + 1) | (((~s & (s + 1)) - 1) >> (__builtin_ctzll(v) + 1));
        }
    }
    for (std::size_t i = 0; i < states.size(); ++i)
        t->lookup[states[i]] = static_cast<std::int32_t>(i);
    data_ = std::move(t);
}

std::size_t SubspaceMap::rank(const BasisState& x) const {
    if (x.size() != n_) throw DomainError("register size mismatch in rank");
    if (x.weight() != k_)
        throw DomainError("state " + x.to_string() + " does not have weight " + std::to_string(k_));
    // Every string sharing the prefix before a 1 but holding 0 there sorts earlier.
    std::size_t r = 0;
    int ones_left = k_;
    for (int w = 0; w < n_ && ones_left > 0; ++w) {
        if (x.bit(w)) {
            r += binomial(n_ - w - 1, ones_left);
            --ones_left;
        }
    }
    return r;
}

BasisState SubspaceMap::unrank(std::size_t i) const {
    if (i >= dim()) throw DomainError("index out of range in unrank");
    std::uint32_t bits = 0;
    int ones_left = k_;
    for (int w = 0; w < n_ && ones_left > 0; ++w) {
        const std::uint64_t zeros_here = binomial(n_ - w - 1, ones_left);
        if (i >= zeros_here) {
            i -= zeros_here;
            bits |= static_cast<std::uint32_t>(wire_mask(n_, w));
            --ones_left;
        }
    }
    return BasisState(n_, bits);
}

SubspaceMap enumerate_basis(int n, int k) { return SubspaceMap(n, k); }

SubspaceState::SubspaceState(SubspaceMap map, Amplitudes amps)
    : map_(std::move(map)), amps_(std::move(amps)) {
    if (amps_.size() != map_.dim()) throw DomainError("amplitude count does not match dimension");
}

SubspaceState SubspaceState::basis(const SubspaceMap& map, const BasisState& x) {
    Amplitudes a(map.dim(), cplx{0.0});
    a[map.rank(x)] = 1.0;
    return SubspaceState(map, std::move(a));
}

double SubspaceState::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

bool SubspaceState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

cplx inner(const SubspaceState& a, const SubspaceState& b) {
    if (!(a.map() == b.map())) throw DomainError("states live on different subspaces");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.amps().size(); ++i) s += std::conj(a.amps()[i]) * b.amps()[i];
    return s;
}

}  // namespace givens
