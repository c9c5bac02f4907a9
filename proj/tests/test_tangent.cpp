#include "oracle.hpp"
#include "shiftsym/generators.hpp"
#include "shiftsym/tangent.hpp"

#include <gtest/gtest.h>

using namespace shiftsym;

namespace {

ChainComplexQ two_term(long d) {
    RatMatrix m(1, 1);
    m(0, 0) = d;
    return ChainComplexQ(Orientation::Chain, 0, {1, 1}, {m});
}

LinSimpSpace pair_groupoid(Index d, int levels) {
    auto power = [&](int k) { return d * (k + 1); };
    std::vector<Index> dims;
    std::vector<std::vector<RatMatrix>> faces(static_cast<std::size_t>(levels) + 1), degens(faces.size());
    for (int k = 0; k <= levels; ++k) {
        dims.push_back(power(k));
        for (int i = 0; k > 0 && i <= k; ++i) {
            RatMatrix f = RatMatrix::Zero(power(k - 1), power(k));
            for (int t = 0, u = 0; t <= k; ++t)
                if (t != i) f.block(d * u++, d * t, d, d) = RatMatrix::Identity(d, d);
            faces[static_cast<std::size_t>(k)].push_back(f);
        }
        for (int i = 0; k < levels && i <= k; ++i) {
            RatMatrix s = RatMatrix::Zero(power(k + 1), power(k));
            for (int u = 0; u <= k + 1; ++u) s.block(d * u, d * (u <= i ? u : u - 1), d, d) = RatMatrix::Identity(d, d);
            degens[static_cast<std::size_t>(k)].push_back(s);
        }
    }
    return LinSimpSpace(dims, faces, degens);
}

void expect_paths_agree(const LinSimpSpace& x, int n) {
    auto k = tangent_complex(x, n, false);
    auto q = tangent_complex_quotient(x, n);
    auto c = tangent_comparison(k, q);
    ASSERT_TRUE(is_chain_map(k.complex, q.complex, c));
    for (auto& [l, m] : c) {
        EXPECT_EQ(m.rows(), m.cols());
        EXPECT_EQ(oracle::naive_rank(m), m.rows()) << "degree " << l;
    }
    auto hk = tangent_homology(k), hq = tangent_homology(q);
    EXPECT_EQ(hk.dims, hq.dims);
}

}  // namespace

TEST(Tangent, ConstantSpace) {
    auto t = tangent_complex(LinSimpSpace::constant(3, 2), 0);
    EXPECT_EQ(t.complex.dim(0), 3);
    auto x = LinSimpSpace::constant(3, 4);
    for (int l = 1; l <= 4; ++l) EXPECT_EQ(tangent_space(x, l).dim(), 0);
    expect_paths_agree(x, 2);
}

TEST(Tangent, DoldKanRecoversComplex) {
    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
        int n = t % 3;
        auto c = random_complex(rng, n, 3);
        auto x = dold_kan(c, n + 2);
        auto tc = tangent_complex(x, n);
        for (int l = 0; l <= n; ++l) {
            EXPECT_EQ(tc.complex.dim(l), c.dim(l));
            EXPECT_EQ(tc.complex.out(l), c.out(l));
        }
        for (int l = n + 1; l <= n + 2; ++l) EXPECT_EQ(tangent_space(x, l).dim(), 0);
        expect_paths_agree(x, n);
    }
}

TEST(Tangent, PairGroupoidIsAcyclic) {
    auto x = pair_groupoid(2, 3);
    auto t = tangent_complex(x, 1);
    EXPECT_EQ(t.complex.dim(1), 2);
    EXPECT_EQ(oracle::naive_rank(t.complex.out(1)), 2);
    for (auto& [l, d] : tangent_homology(t).dims) EXPECT_EQ(d, 0) << l;
    expect_paths_agree(x, 1);
    EXPECT_THROW(tangent_complex(x, 0), PreconditionError);
}

TEST(Tangent, HomologyExamples) {
    auto zero = tangent_homology(tangent_complex(dold_kan(two_term(0), 3), 1));
    EXPECT_EQ(zero.dims.at(0), 1);
    EXPECT_EQ(zero.dims.at(1), 1);
    auto id = tangent_homology(tangent_complex(dold_kan(two_term(1), 3), 1));
    EXPECT_EQ(id.dims.at(0), 0);
    EXPECT_EQ(id.dims.at(1), 0);
}

TEST(Tangent, InducedMapsAndQuasiIsos) {
    auto x = dold_kan(two_term(0), 3);
    auto id = SimpLinMap::identity(x);
    auto t = tangent_complex(x, 1);
    for (auto& [l, m] : induced_tangent_map(id, t, t)) EXPECT_TRUE(is_identity(m)) << l;
    EXPECT_TRUE(check_quasi_iso(id, 1).pass());

    // DK functoriality round trip
    Rng rng(2);
    auto h = random_hypercover(rng, 2, 3, 4);
    auto ts = tangent_complex(h.map.source(), 2);
    auto tt = tangent_complex(h.map.target(), 2);
    auto m = induced_tangent_map(h.map, ts, tt);
    for (int l = 0; l <= 2; ++l) EXPECT_EQ(m.at(l), h.chain_map[static_cast<std::size_t>(l)]);
    EXPECT_TRUE(check_quasi_iso(h.map, 2).pass());

    // collapse DK(Q --0--> Q) -> constant Q
    RatMatrix e0(1, 1);
    e0(0, 0) = 1;
    auto collapse = dold_kan_map(two_term(0), ChainComplexQ(Orientation::Chain, 0, {1, 0}, {RatMatrix(1, 0)}),
                                 {e0, RatMatrix(0, 1)}, 3);
    auto rep = check_quasi_iso(collapse, 1);
    EXPECT_FALSE(rep.pass());
    EXPECT_EQ(rep.degrees[1].dim_source, 1);
    EXPECT_EQ(rep.degrees[1].dim_target, 0);
    EXPECT_FALSE(check_hypercover(collapse, 1).pass());
}

TEST(Tangent, RandomHypercoversAreQuasiIsos) {
    Rng rng(3);
    for (int t = 0; t < 15; ++t) {
        int n = t % 3;
        auto h = random_hypercover(rng, n, 3, n + 2);
        ASSERT_TRUE(check_hypercover(h.map, n).pass());
        auto rep = check_quasi_iso(h.map, n);
        EXPECT_TRUE(rep.pass()) << t;
    }
}
