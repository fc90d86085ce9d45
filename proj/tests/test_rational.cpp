#include "perigid/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace perigid;

namespace {
Rational q(long a, long b) {
    Rational r{Integer(a), Integer(b)};
    r.canonicalize();
    return r;
}
}  // namespace

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("3/4"), q(3, 4));
    EXPECT_EQ(parse_rational("-6/8"), q(-3, 4));
    EXPECT_EQ(parse_rational("5"), Rational(5));
    EXPECT_EQ(to_string(q(-6, 8)), "-3/4");
    EXPECT_EQ(to_string(q(10, 5)), "2");
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(ExactRank, IdentityAndRepeatedRow) {
    EXPECT_EQ(exact_rank(RationalMatrix::identity(3)), 3u);
    RationalMatrix m(3, 3);
    for (std::size_t c = 0; c < 3; ++c) {
        m(0, c) = q(static_cast<long>(c + 1), 3);
        m(1, c) = m(0, c);
        m(2, c) = Rational(static_cast<long>(c * c));
    }
    EXPECT_EQ(exact_rank(m), 2u);
    EXPECT_EQ(exact_rank(RationalMatrix(0, 4)), 0u);
    EXPECT_EQ(exact_rank(RationalMatrix(4, 0)), 0u);
}

// Independent oracle: Gaussian elimination with rational pivots.
std::size_t naive_rank(RationalMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(rank, k));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || m(r, c) == 0) continue;
            const Rational f = m(r, c) / m(rank, c);
            for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
        }
        ++rank;
    }
    return rank;
}

TEST(ExactRank, MatchesNaiveEliminationOnRandomLowRankMatrices) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 6), dim(1, 7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto rows = static_cast<std::size_t>(dim(rng));
        const auto cols = static_cast<std::size_t>(dim(rng));
        const auto inner = static_cast<std::size_t>(dim(rng));
        RationalMatrix a(rows, inner), b(inner, cols), m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t k = 0; k < inner; ++k) a(r, k) = q(num(rng), den(rng));
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t c = 0; c < cols; ++c) b(k, c) = q(num(rng), den(rng));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                for (std::size_t k = 0; k < inner; ++k) m(r, c) += a(r, k) * b(k, c);
        EXPECT_EQ(exact_rank(m), naive_rank(m));
        EXPECT_LE(exact_rank(m), inner);
    }
}

TEST(IntegerRank, Basics) {
    std::vector<std::vector<std::int64_t>> rows{{1, 0}, {2, 0}, {3, 0}};
    EXPECT_EQ(integer_rank(rows), 1u);
    rows.push_back({0, 1});
    EXPECT_EQ(integer_rank(rows), 2u);
    EXPECT_EQ(integer_rank(std::vector<std::vector<std::int64_t>>{}), 0u);
}

TEST(RationalMatrix, SelectAppendMultiply) {
    RationalMatrix m(0, 2);
    const std::vector<Rational> r0{1, 2}, r1{3, 4};
    m.append_row(r0);
    m.append_row(r1);
    const std::vector<std::size_t> pick{1};
    const auto s = m.select_rows(pick);
    EXPECT_EQ(s.rows(), 1u);
    EXPECT_EQ(s(0, 0), 3);
    const std::vector<Rational> v{1, 1};
    EXPECT_EQ(multiply(m, v), (Point{3, 7}));
}
