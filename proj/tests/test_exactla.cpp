#include "oracle.hpp"
#include "shiftsym/chain_complex.hpp"

#include <gtest/gtest.h>

using namespace shiftsym;

namespace {

RatMatrix mat(Index r, Index c, std::initializer_list<long> v) {
    RatMatrix m(r, c);
    auto it = v.begin();
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = Rational(*it++);
    return m;
}

}  // namespace

TEST(Rational, ParsesAndCanonicalizes) {
    EXPECT_EQ(to_string(parse_rational("3/6")), "1/2");
    EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
    EXPECT_EQ(to_string(parse_rational("7")), "7");
    EXPECT_EQ(to_string(parse_rational("0/5")), "0");
    EXPECT_EQ(parse_rational("123456789012345678901234567890/3"), Rational(Integer("41152263004115226300411522630")));
}

TEST(Rational, RejectsMalformed) {
    for (const char* s : {"", "1/0", "1/-2", "abc", "1.5", "1/", "/2", "--1", "1 /2"})
        EXPECT_THROW(parse_rational(s), InvalidInput) << s;
}

TEST(Rank, Examples) {
    EXPECT_EQ(rank(RatMatrix::Identity(2, 2)), 2);
    EXPECT_EQ(rank(RatMatrix::Zero(2, 2)), 0);
    EXPECT_EQ(rank(mat(2, 2, {1, 2, 2, 4})), 1);
    EXPECT_EQ(rank(RatMatrix(0, 3)), 0);
    EXPECT_EQ(rank(RatMatrix(3, 0)), 0);
}

TEST(Rank, MatchesNaiveEliminationOnRandomMatrices) {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<int> d(0, 6);
        Index r = d(rng), c = d(rng);
        RatMatrix m = oracle::random_matrix(rng, r, c, -2, 2, 0.5);
        ASSERT_EQ(rank(m), oracle::naive_rank(m));
    }
}

TEST(Solve, Examples) {
    RatVector b(2);
    b << Rational(1), Rational(2);
    auto s = solve(RatMatrix::Identity(2, 2), b);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(s.solution, b);
    EXPECT_EQ(s.kernel.cols(), 0);

    RatVector b1(1);
    b1 << Rational(3);
    auto t = solve(mat(1, 2, {1, 1}), b1);
    ASSERT_TRUE(t.feasible);
    EXPECT_EQ(t.solution(0), Rational(3));
    EXPECT_EQ(t.solution(1), Rational(0));
    ASSERT_EQ(t.kernel.cols(), 1);
    EXPECT_EQ(t.kernel(0, 0), -t.kernel(1, 0));

    RatVector one(1);
    one << Rational(1);
    auto u = solve(RatMatrix::Zero(1, 1), one);
    EXPECT_FALSE(u.feasible);
    // certificate y with yᵀM = 0 and yᵀb != 0
    EXPECT_TRUE(is_zero_matrix(product(u.certificate.transpose(), RatMatrix::Zero(1, 1))));
    EXPECT_NE(u.certificate.dot(one), Rational(0));
}

TEST(Solve, SubstitutionReproducesRightHandSide) {
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
        std::uniform_int_distribution<int> d(1, 6);
        Index r = d(rng), c = d(rng);
        RatMatrix m = oracle::random_matrix(rng, r, c, -3, 3, 0.6);
        RatVector x = oracle::random_matrix(rng, c, 1);
        RatVector b = product(m, x);
        auto s = solve(m, b);
        ASSERT_TRUE(s.feasible);
        ASSERT_EQ(RatVector(product(m, s.solution)), b);
        ASSERT_TRUE(is_zero_matrix(product(m, s.kernel)));
        ASSERT_EQ(s.kernel.cols(), c - oracle::naive_rank(m));
        RatVector junk = oracle::random_matrix(rng, r, 1);
        auto s2 = solve(m, junk);
        if (s2.feasible) {
            ASSERT_EQ(RatVector(product(m, s2.solution)), junk);
        } else {
            ASSERT_TRUE(is_zero_matrix(product(s2.certificate.transpose(), m)));
            ASSERT_NE(s2.certificate.dot(junk), Rational(0));
        }
    }
}

TEST(Homology, Examples) {
    ChainComplexQ zero_d(Orientation::Chain, 0, {1, 1}, {RatMatrix::Zero(1, 1)});
    auto h = homology(zero_d);
    EXPECT_EQ(h[0].dim, 1);
    EXPECT_EQ(h[1].dim, 1);

    ChainComplexQ id_d(Orientation::Chain, 0, {1, 1}, {RatMatrix::Identity(1, 1)});
    for (auto& g : homology(id_d)) EXPECT_EQ(g.dim, 0);

    ChainComplexQ proj(Orientation::Chain, 0, {1, 2}, {mat(1, 2, {1, 0})});
    auto hp = homology(proj);
    EXPECT_EQ(hp[0].dim, 0);
    EXPECT_EQ(hp[1].dim, 1);
}

TEST(Homology, RejectsNonComplex) {
    ChainComplexQ bad(Orientation::Chain, 0, {1, 1, 1}, {mat(1, 1, {1}), mat(1, 1, {1})});
    EXPECT_THROW(homology(bad), PreconditionError);
}

namespace {

// Random chain complex: each differential lands in the kernel of the previous one.
ChainComplexQ random_complex(std::mt19937& rng, int len) {
    std::uniform_int_distribution<int> dd(0, 4);
    std::vector<Index> dims;
    for (int i = 0; i < len; ++i) dims.push_back(dd(rng));
    std::vector<RatMatrix> maps;
    for (int t = 0; t + 1 < len; ++t) {
        // d : C_{t+1} -> C_t landing in ker(previous d)
        auto ts = static_cast<std::size_t>(t);
        RatMatrix target_space = t == 0 ? RatMatrix(RatMatrix::Identity(dims[0], dims[0])) : kernel(maps[ts - 1]);
        RatMatrix coeff = oracle::random_matrix(rng, target_space.cols(), dims[ts + 1], -2, 2, 0.5);
        maps.push_back(product(target_space, coeff));
    }
    return ChainComplexQ(Orientation::Chain, 0, dims, maps);
}

}  // namespace

TEST(Homology, EulerCharacteristicAndBasisChangeInvariance) {
    std::mt19937 rng(21);
    for (int t = 0; t < 60; ++t) {
        auto c = random_complex(rng, 5);
        auto h = homology(c);
        long chi_c = 0, chi_h = 0;
        for (int l = c.lo(); l <= c.hi(); ++l) {
            long sign = l % 2 == 0 ? 1 : -1;
            chi_c += sign * c.dim(l);
            chi_h += sign * h[static_cast<std::size_t>(l)].dim;
            // oracle: dim H = dim C - rank(out) - rank(in)
            ASSERT_EQ(h[static_cast<std::size_t>(l)].dim,
                      c.dim(l) - oracle::naive_rank(c.out(l)) - oracle::naive_rank(c.in(l)));
        }
        ASSERT_EQ(chi_c, chi_h);
        // conjugate by random invertibles T_l: d' = T_{l-1} d T_l^{-1}
        std::vector<RatMatrix> T;
        for (int l = c.lo(); l <= c.hi(); ++l) T.push_back(oracle::random_invertible(rng, c.dim(l)));
        std::vector<RatMatrix> maps;
        std::vector<Index> dims;
        for (int l = c.lo(); l <= c.hi(); ++l) dims.push_back(c.dim(l));
        for (int l = c.lo() + 1; l <= c.hi(); ++l)
            maps.push_back(product(product(T[static_cast<std::size_t>(l - 1)], c.out(l)),
                                   inverse(T[static_cast<std::size_t>(l)])));
        ChainComplexQ c2(Orientation::Chain, 0, dims, maps);
        auto h2 = homology(c2);
        for (std::size_t l = 0; l < h.size(); ++l) ASSERT_EQ(h[l].dim, h2[l].dim);
        std::map<int, RatMatrix> f;
        for (int l = c.lo(); l <= c.hi(); ++l) f[l] = T[static_cast<std::size_t>(l)];
        ASSERT_TRUE(is_chain_map(c, c2, f));
        for (auto& d : compare_homology(c, c2, f, c.lo(), c.hi())) ASSERT_TRUE(d.iso());
    }
}

TEST(Subspace, CoordinatesRoundTrip) {
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        RatMatrix m = oracle::random_matrix(rng, 3, 6, -2, 2, 0.6);
        auto k = kernel_subspace(m);
        ASSERT_EQ(k.dim(), 6 - oracle::naive_rank(m));
        RatMatrix c = oracle::random_matrix(rng, k.dim(), 2);
        RatMatrix v = product(k.basis(), c);
        ASSERT_EQ(k.coords(v), c);
        Subspace<Rational> generic(k.basis() * Rational(2));
        ASSERT_EQ(generic.coords(v) * Rational(2), c);
        if (k.dim() < 6) {
            RatMatrix outside = RatMatrix::Zero(6, 1);
            bool found = false;
            for (Index j = 0; j < 6 && !found; ++j) {
                outside.setZero();
                outside(j, 0) = 1;
                found = !is_zero_matrix(product(m, outside));
            }
            ASSERT_FALSE(k.checked_coords(outside).has_value());
        }
    }
}
