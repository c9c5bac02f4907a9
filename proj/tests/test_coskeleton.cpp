#include "oracle.hpp"
#include "shiftsym/coskeleton.hpp"
#include "shiftsym/generators.hpp"

#include <gtest/gtest.h>

using namespace shiftsym;

namespace {

bool levelwise_iso(const SimpLinMap& f) {
    for (int n = 0; n <= f.max_level(); ++n) {
        const RatMatrix& a = f.level(n);
        if (a.rows() != a.cols() || oracle::naive_rank(a) != a.rows()) return false;
    }
    return true;
}

}  // namespace

TEST(RelativeCoskeleton, Extremes) {
    Rng rng(1);
    for (int t = 0; t < 4; ++t) {
        int n = 1 + t % 2;
        auto h = random_hypercover(rng, n, 2, n + 2);
        auto low = relative_coskeleton(h.map, -1);
        ASSERT_TRUE(low.space.validate().ok);
        EXPECT_TRUE(low.to_target.validate().ok);
        EXPECT_TRUE(levelwise_iso(low.to_target));
        auto high = relative_coskeleton(h.map, n + 2);
        ASSERT_TRUE(high.space.validate().ok);
        EXPECT_TRUE(high.from_source.validate().ok);
        EXPECT_TRUE(levelwise_iso(high.from_source));
        // above the Lie degree the coskeleton already recovers X
        EXPECT_TRUE(levelwise_iso(relative_coskeleton(h.map, n + 1).from_source));
    }
}

TEST(RelativeCoskeleton, TowerComposesToMapAndConsistsOfHypercovers) {
    Rng rng(2);
    for (int t = 0; t < 4; ++t) {
        int n = 1 + t % 2;
        auto h = random_hypercover(rng, n, 2, n + 2);
        auto tower = coskeleton_tower(h.map, n + 1);
        SimpLinMap acc = tower.stages.back().from_source;
        for (std::size_t s = tower.maps.size(); s-- > 0;) {
            ASSERT_TRUE(tower.maps[s].validate().ok);
            EXPECT_TRUE(check_hypercover(tower.maps[s], n).pass()) << "stage " << s;
            acc = compose(tower.maps[s], acc);
            EXPECT_EQ(acc.levels(), tower.stages[s].from_source.levels());
        }
        acc = compose(tower.stages.front().to_target, acc);
        EXPECT_EQ(acc.levels(), h.map.levels());
    }
}
