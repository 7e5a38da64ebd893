#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace givens {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Amplitudes = std::vector<cplx>;

/// Largest register handled by the fixed-weight subspace machinery.
inline constexpr int kMaxSubspaceWires = 16;
/// Largest register handled by full 2^n state-vector simulation.
inline constexpr int kMaxFullWires = 14;

/// Invalid argument or an input outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A circuit left an ancilla in a state other than its declared final pattern.
class IntegrityError : public std::runtime_error {
public:
    IntegrityError(const std::string& what, double leaked_norm)
        : std::runtime_error(what), leaked_norm_(leaked_norm) {}
    double leaked_norm() const { return leaked_norm_; }

private:
    double leaked_norm_;
};

/// Amplitude escaped the fixed-particle-number sector.
class ConservationError : public std::runtime_error {
public:
    ConservationError(const std::string& what, double leakage)
        : std::runtime_error(what), leakage_(leakage) {}
    double leakage() const { return leakage_; }

private:
    double leakage_;
};

/// A numerical check exceeded its tolerance.
class ToleranceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

}  // namespace givens
