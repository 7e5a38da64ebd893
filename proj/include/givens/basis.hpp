#pragma once

// Fixed-Hamming-weight subspaces of an n-qubit register.
//
// Bit convention: wire 0 is the leftmost character of a printed occupation
// string and the most significant bit of the packed integer, so the packed
// value of "110000" is 0b110000. With this packing, numeric order of packed
// values coincides with lexicographic order of the printed strings.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "givens/common.hpp"

namespace givens {

class BasisState {
public:
    BasisState() = default;
    BasisState(int n, std::uint32_t bits);

    static BasisState from_string(std::string_view s);

    int size() const { return n_; }
    std::uint32_t bits() const { return bits_; }
    int weight() const { return popcount(bits_); }

    /// Occupation of `wire` (0 = leftmost).
    int bit(int wire) const { return static_cast<int>((bits_ >> (n_ - 1 - wire)) & 1u); }
    BasisState with_bit(int wire, int value) const;

    std::string to_string() const;

    friend bool operator==(const BasisState&, const BasisState&) = default;
    friend auto operator<=>(const BasisState& a, const BasisState& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    int n_ = 0;
    std::uint32_t bits_ = 0;
};

/// Packed mask with a single wire set, in the convention above.
inline std::uint64_t wire_mask(int n, int wire) { return std::uint64_t{1} << (n - 1 - wire); }

int hamming_distance(const BasisState& x, const BasisState& y);

/// Half the Hamming distance between two equal-weight states.
int excitation_order(const BasisState& x, const BasisState& y);

/// 1^k 0^(n-k): all particles in the first k wires.
BasisState reference_state(int n, int k);

std::uint64_t binomial(int n, int k);

/// Lexicographically ordered weight-k basis of an n-wire register with O(n)
/// ranking and O(1) packed-value lookup.
class SubspaceMap {
public:
    SubspaceMap(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t dim() const { return data_->states.size(); }

    const std::vector<std::uint32_t>& packed() const { return data_->states; }
    BasisState state(std::size_t i) const { return BasisState(n_, data_->states[i]); }

    /// Combinatorial rank; never searches.
    std::size_t rank(const BasisState& x) const;
    BasisState unrank(std::size_t i) const;

    /// Rank lookup for packed values; returns -1 for values of the wrong weight.
    std::int64_t index_of(std::uint32_t packed) const {
        return data_->lookup[packed];
    }

    friend bool operator==(const SubspaceMap& a, const SubspaceMap& b) {
        return a.n_ == b.n_ && a.k_ == b.k_;
    }

private:
    struct Tables {
        std::vector<std::uint32_t> states;
        std::vector<std::int32_t> lookup;
    };

    int n_;
    int k_;
    std::shared_ptr<const Tables> data_;
};

SubspaceMap enumerate_basis(int n, int k);

/// Dense amplitude vector over a SubspaceMap.
class SubspaceState {
public:
    SubspaceState(SubspaceMap map, Amplitudes amps);

    static SubspaceState basis(const SubspaceMap& map, const BasisState& x);

    const SubspaceMap& map() const { return map_; }
    const Amplitudes& amps() const { return amps_; }
    Amplitudes& amps() { return amps_; }

    cplx amplitude(const BasisState& x) const { return amps_[map_.rank(x)]; }

    double norm() const;
    bool is_normalized(double tol = 1e-12) const;

private:
    SubspaceMap map_;
    Amplitudes amps_;
};

/// <a|b>
cplx inner(const SubspaceState& a, const SubspaceState& b);

}  // namespace givens
