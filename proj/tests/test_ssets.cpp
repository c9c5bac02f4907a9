#include "oracle.hpp"
#include "shiftsym/ssets.hpp"

#include <gtest/gtest.h>

using namespace shiftsym;

namespace {

std::vector<std::string> nondegenerate_names(const SimplicialShape& s, int level) {
    std::vector<std::string> out;
    for (auto& x : s.nondegenerate())
        if (x.level == level) out.push_back(s.name(x.level, x.index));
    return out;
}

}  // namespace

TEST(StandardSimplex, CountsMatchMonotoneMaps) {
    for (int m = 0; m <= 4; ++m) {
        auto s = standard_simplex(m, 4);
        EXPECT_TRUE(s.validate().ok);
        for (int k = 0; k <= 4; ++k) {
            EXPECT_EQ(s.count(k), oracle::monotone_count(k, m)) << m << "," << k;
            EXPECT_EQ(nondegenerate_names(s, k).size(), oracle::binomial(m + 1, k + 1)) << m << "," << k;
        }
    }
    auto d1 = standard_simplex(1, 1);
    EXPECT_EQ(d1.names()[1], (std::vector<std::string>{"00", "01", "11"}));
    EXPECT_EQ(standard_simplex(2, 1).count(1), 6u);
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(standard_simplex(0, 3).count(k), 1u);
}

TEST(Horn, Examples) {
    auto h = horn(2, 1);
    EXPECT_TRUE(h.validate().ok);
    EXPECT_EQ(nondegenerate_names(h, 0), (std::vector<std::string>{"0", "1", "2"}));
    EXPECT_EQ(nondegenerate_names(h, 1), (std::vector<std::string>{"01", "12"}));
    EXPECT_TRUE(nondegenerate_names(h, 2).empty());

    auto h10 = horn(1, 0);
    EXPECT_EQ(nondegenerate_names(h10, 0), (std::vector<std::string>{"0"}));
    EXPECT_TRUE(nondegenerate_names(h10, 1).empty());

    auto full = standard_simplex(3, 3);
    for (int j = 0; j <= 3; ++j) {
        auto hj = horn(3, j);
        for (int k = 0; k <= 3; ++k)
            for (std::size_t x = 0; x < hj.count(k); ++x) EXPECT_TRUE(full.find(k, hj.name(k, x)).has_value());
        // everything except the top simplex and the face opposite j
        std::size_t nd = 0;
        for (int k = 0; k <= 3; ++k) nd += nondegenerate_names(hj, k).size();
        EXPECT_EQ(nd, 15u - 2u);
    }
    EXPECT_THROW(horn(2, 3), InvalidInput);
    EXPECT_THROW(horn(0, 0), InvalidInput);
}

TEST(Boundary, ExamplesAndSkeleta) {
    auto b1 = boundary(1);
    EXPECT_EQ(nondegenerate_names(b1, 0).size(), 2u);
    EXPECT_TRUE(nondegenerate_names(b1, 1).empty());
    auto b2 = boundary(2);
    EXPECT_EQ(nondegenerate_names(b2, 0).size(), 3u);
    EXPECT_EQ(nondegenerate_names(b2, 1).size(), 3u);
    EXPECT_TRUE(nondegenerate_names(b2, 2).empty());

    auto d2 = standard_simplex(2, 2);
    EXPECT_EQ(skeleton(d2, 2).names(), d2.names());
    EXPECT_EQ(skeleton(d2, 3).names(), d2.names());
    EXPECT_EQ(skeleton(d2, 1).names(), boundary(2).names());
    for (int n = 1; n <= 4; ++n)
        EXPECT_EQ(skeleton(standard_simplex(n, n), n - 1).names(), boundary(n).names());
}

TEST(Validate, MutationIsDetected) {
    std::vector<SimplicialShape> shapes = {standard_simplex(2, 3), horn(3, 1), boundary(3),
                                           nerve_groupoid(FiniteGroupoid::pair_groupoid(2), 3)};
    for (auto& s : shapes) {
        ASSERT_TRUE(s.validate().ok);
        for (int level = 1; level <= s.max_level(); ++level)
            for (int i = 0; i <= level; ++i)
                for (std::size_t x = 0; x < s.count(level); ++x) {
                    std::size_t cur = s.face(level, i, x);
                    std::size_t other = (cur + 1) % s.count(level - 1);
                    if (other == cur) continue;
                    EXPECT_FALSE(s.with_face(level, i, x, other).validate().ok)
                        << "level " << level << " face " << i << " simplex " << x;
                }
    }
}

TEST(Nerve, Examples) {
    auto pair = FiniteGroupoid::pair_groupoid(2);
    EXPECT_TRUE(pair.validate().ok);
    auto n = nerve_groupoid(pair, 3);
    EXPECT_TRUE(n.validate().ok);
    EXPECT_EQ(n.count(1), 4u);
    // composable k-chains in the pair groupoid on 2 objects: 2^(k+1)
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(n.count(k), std::size_t{1} << (k + 1));

    auto triv = nerve_groupoid(FiniteGroupoid::cyclic_group(1), 4);
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(triv.count(k), 1u);

    auto z3 = nerve_groupoid(FiniteGroupoid::cyclic_group(3), 3);
    for (int k = 0; k <= 3; ++k) {
        std::size_t expect = 1;
        for (int t = 0; t < k; ++t) expect *= 3;
        EXPECT_EQ(z3.count(k), expect);
    }

    auto unit = nerve_groupoid(FiniteGroupoid::unit_groupoid(3), 3);
    for (int k = 1; k <= 3; ++k) {
        EXPECT_EQ(unit.count(k), 3u);
        for (int i = 0; i <= k; ++i)
            for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(unit.face(k, i, x), x);
    }
}

TEST(Nerve, FaceConventions) {
    auto g = FiniteGroupoid::pair_groupoid(2);
    auto n = nerve_groupoid(g, 2);
    for (std::size_t a = 0; a < g.arrows().size(); ++a) {
        auto& arrow = g.arrows()[a];
        auto x = *n.find(1, "[" + arrow.name + "]");
        EXPECT_EQ(n.name(0, n.face(1, 0, x)), g.objects()[arrow.source]);
        EXPECT_EQ(n.name(0, n.face(1, 1, x)), g.objects()[arrow.target]);
    }
}

TEST(KanSet, NervesAreStrictlyKanAboveOne) {
    for (auto g : {FiniteGroupoid::pair_groupoid(2), FiniteGroupoid::pair_groupoid(3), FiniteGroupoid::cyclic_group(3),
                   FiniteGroupoid::unit_groupoid(2)}) {
        auto n = nerve_groupoid(g, 3);
        for (int m = 1; m <= 3; ++m)
            for (int j = 0; j <= m; ++j) {
                auto r = check_kan_set(n, m, j, m >= 2);
                EXPECT_TRUE(r.pass) << m << "," << j;
                EXPECT_GT(r.horns, 0u);
            }
    }
    EXPECT_TRUE(check_kan_set(nerve_groupoid(FiniteGroupoid::cyclic_group(4), 2), 1, 0, false).pass);
}

TEST(KanSet, IntervalFailsOuterHornWithWitness) {
    auto d1 = standard_simplex(1, 2);
    EXPECT_TRUE(check_kan_set(d1, 2, 1, false).pass);
    auto r = check_kan_set(d1, 2, 0, false);
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.witness_faces.has_value());
    EXPECT_EQ(r.witness_fillers, 0u);
    // the witness faces (d_1, d_2) are compatible: d_1 d_2 = d_1 d_1
    auto x1 = *d1.find(1, (*r.witness_faces)[0]);
    auto x2 = *d1.find(1, (*r.witness_faces)[1]);
    EXPECT_EQ(d1.face(1, 1, x2), d1.face(1, 1, x1));
    // Kan!(1,0) fails for the pair groupoid: every object is the target of two arrows
    EXPECT_FALSE(check_kan_set(nerve_groupoid(FiniteGroupoid::pair_groupoid(2), 1), 1, 0, true).pass);
}
