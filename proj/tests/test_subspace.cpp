#include <gtest/gtest.h>

#include <random>

#include "givens/basis.hpp"
#include "oracle.hpp"

using namespace givens;

namespace {

BasisState bs(const char* s) { return BasisState::from_string(s); }

}  // namespace

TEST(Subspace, EnumerateThreeTwo) {
    const SubspaceMap m = enumerate_basis(3, 2);
    ASSERT_EQ(m.dim(), 3u);
    EXPECT_EQ(m.state(0).to_string(), "011");
    EXPECT_EQ(m.state(1).to_string(), "101");
    EXPECT_EQ(m.state(2).to_string(), "110");
}

TEST(Subspace, EnumerateSmall) {
    const SubspaceMap m = enumerate_basis(2, 1);
    ASSERT_EQ(m.dim(), 2u);
    EXPECT_EQ(m.state(0).to_string(), "01");
    EXPECT_EQ(m.state(1).to_string(), "10");
    EXPECT_EQ(enumerate_basis(6, 3).dim(), 20u);
}

TEST(Subspace, RankExamples) {
    const SubspaceMap m32(3, 2);
    EXPECT_EQ(m32.rank(bs("011")), 0u);
    EXPECT_EQ(m32.rank(bs("110")), 2u);
    EXPECT_EQ(m32.unrank(1).to_string(), "101");
    EXPECT_EQ(SubspaceMap(2, 1).unrank(0).to_string(), "01");
    const SubspaceMap m63(6, 3);
    EXPECT_EQ(m63.rank(bs("111000")), 19u);
    EXPECT_EQ(m63.unrank(0).to_string(), "000111");
}

TEST(Subspace, RankOfLexMaximumForSixTwo) {
    // 110000 is the lexicographic maximum of the weight-2 strings on 6 wires.
    const auto b = oracle::basis(6, 2);
    EXPECT_EQ(b.back(), "110000");
    EXPECT_EQ(SubspaceMap(6, 2).rank(bs("110000")), b.size() - 1);
}

TEST(Subspace, MatchesBruteForceEnumeration) {
    for (int n = 1; n <= 10; ++n)
        for (int k = 0; k <= n; ++k) {
            const SubspaceMap m(n, k);
            const auto want = oracle::basis(n, k);
            ASSERT_EQ(m.dim(), want.size()) << n << "," << k;
            ASSERT_EQ(m.dim(), binomial(n, k));
            for (std::size_t i = 0; i < want.size(); ++i) {
                ASSERT_EQ(m.state(i).to_string(), want[i]);
                ASSERT_EQ(m.rank(m.state(i)), i);
                ASSERT_EQ(m.unrank(i), m.state(i));
                ASSERT_EQ(m.index_of(m.packed()[i]), static_cast<std::int64_t>(i));
            }
        }
}

TEST(Subspace, IndexOfRejectsWrongWeight) {
    const SubspaceMap m(5, 2);
    EXPECT_EQ(m.index_of(0b00111u), -1);
    EXPECT_EQ(m.index_of(0u), -1);
}

TEST(Subspace, Errors) {
    EXPECT_THROW(SubspaceMap(3, 4), DomainError);
    EXPECT_THROW(SubspaceMap(3, -1), DomainError);
    EXPECT_THROW(SubspaceMap(17, 2), DomainError);
    EXPECT_NO_THROW(SubspaceMap(16, 8));
    EXPECT_THROW(SubspaceMap(3, 2).rank(bs("001")), DomainError);
    EXPECT_THROW(SubspaceMap(3, 2).unrank(3), DomainError);
    EXPECT_THROW(excitation_order(bs("110"), bs("100")), DomainError);
    EXPECT_THROW(BasisState::from_string("01a"), DomainError);
}

TEST(Subspace, ExcitationOrder) {
    EXPECT_EQ(excitation_order(bs("1100"), bs("0101")), 1);
    EXPECT_EQ(excitation_order(bs("0011"), bs("1100")), 2);
    EXPECT_EQ(excitation_order(bs("101010"), bs("101010")), 0);
}

TEST(Subspace, ExcitationOrderIsSymmetricAndSubadditive) {
    const SubspaceMap m(6, 3);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const auto x = m.state(i), y = m.state(j);
            ASSERT_EQ(excitation_order(x, y), excitation_order(y, x));
            for (std::size_t l = 0; l < m.dim(); ++l)
                ASSERT_LE(excitation_order(x, m.state(l)), excitation_order(x, y) + excitation_order(y, m.state(l)));
        }
}

TEST(Subspace, ReferenceState) {
    EXPECT_EQ(reference_state(6, 2).to_string(), "110000");
    EXPECT_EQ(reference_state(4, 0).to_string(), "0000");
    EXPECT_EQ(reference_state(3, 3).to_string(), "111");
}

TEST(Subspace, BitConvention) {
    const auto x = bs("110000");
    EXPECT_EQ(x.bits(), 0b110000u);
    EXPECT_EQ(x.bit(0), 1);
    EXPECT_EQ(x.bit(1), 1);
    EXPECT_EQ(x.bit(2), 0);
    EXPECT_EQ(x.with_bit(5, 1).to_string(), "110001");
}

TEST(Subspace, StateNormAndInner) {
    const SubspaceMap m(4, 2);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    Amplitudes a(m.dim());
    for (auto& v : a) v = {normal(rng), normal(rng)};
    double total = 0.0;
    for (auto v : a) total += std::norm(v);
    for (auto& v : a) v /= std::sqrt(total);
    const SubspaceState s(m, a);
    EXPECT_TRUE(s.is_normalized());
    EXPECT_NEAR(std::abs(inner(s, s) - 1.0), 0.0, 1e-12);
    EXPECT_EQ(s.amplitude(m.state(2)), a[2]);
    EXPECT_THROW(SubspaceState(m, Amplitudes(3)), DomainError);
}
