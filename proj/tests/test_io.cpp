#include "shiftsym/generators.hpp"
#include "shiftsym/io.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace shiftsym;

namespace {

std::string roundtrip_model(const std::string& text) { return dump_json(model_to_json(model_from_json(parse_json(text)))); }

}  // namespace

TEST(Io, Rationals) {
    EXPECT_EQ(rational_to_json(Rational(-3, 4)), Json("-3/4"));
    EXPECT_EQ(rational_to_json(Rational(5)), Json("5"));
    EXPECT_EQ(rational_from_json(Json("6/8")), Rational(3, 4));
    EXPECT_EQ(rational_from_json(Json(7)), Rational(7));
    EXPECT_THROW(rational_from_json(Json(0.5)), InvalidInput);
    EXPECT_THROW(rational_from_json(Json("1/0")), InvalidInput);
}

TEST(Io, ModelRoundTrip) {
    Rng rng(31);
    std::vector<LinSimpSpace> models = {pair_groupoid_model(2, 3), LinSimpSpace::constant(2, 2),
                                        two_term_model(random_matrix(rng, 2, 2), 3), LinSimpSpace::point(1)};
    for (int t = 0; t < 3; ++t) models.push_back(dold_kan(random_complex(rng, 2, 2), 3));
    for (auto& x : models) {
        std::string canon = dump_json(model_to_json(x));
        EXPECT_EQ(roundtrip_model(canon), canon);
        auto y = model_from_json(parse_json(canon));
        for (int m = 0; m <= x.max_level(); ++m) {
            EXPECT_EQ(y.dim(m), x.dim(m));
            for (int i = 0; m > 0 && i <= m; ++i) EXPECT_EQ(y.face(m, i), x.face(m, i));
        }
    }
}

TEST(Io, ModelErrors) {
    auto j = model_to_json(pair_groupoid_model(1, 2));
    auto bad = j;
    bad["face"]["1,0"] = Json::array({Json::array({"1", "0", "0"})});
    EXPECT_THROW(model_from_json(bad), InvalidInput);
    bad = j;
    bad["face"].erase("2,2");
    EXPECT_THROW(model_from_json(bad), InvalidInput);
    bad = j;
    bad["degen"]["7,0"] = Json::array();
    EXPECT_THROW(model_from_json(bad), InvalidInput);
    EXPECT_THROW(model_from_json(Json::object()), InvalidInput);
    try {
        parse_json("{\"levels\": [1, 2,");
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("at byte"), std::string::npos);
    }
}

TEST(Io, ShapeRoundTrip) {
    for (auto s : {standard_simplex(2, 3), horn(2, 1), nerve_groupoid(FiniteGroupoid::pair_groupoid(2), 2)}) {
        std::string canon = dump_json(shape_to_json(s));
        auto back = shape_from_json(parse_json(canon));
        EXPECT_EQ(dump_json(shape_to_json(back)), canon);
        EXPECT_TRUE(back.validate().ok);
    }
    auto j = shape_to_json(standard_simplex(1, 1));
    j["face"]["1,0"][0] = "nope";
    EXPECT_THROW(shape_from_json(j), InvalidInput);
}

TEST(Io, MapRoundTrip) {
    Rng rng(32);
    auto h = random_hypercover(rng, 1, 2, 3);
    std::string canon = dump_json(map_to_json(h.map));
    auto back = map_from_json(parse_json(canon));
    EXPECT_EQ(dump_json(map_to_json(back)), canon);
    for (int m = 0; m <= h.map.max_level(); ++m) EXPECT_EQ(back.level(m), h.map.level(m));

    auto j = parse_json(canon);
    j["level_mats"]["0"] = Json::array();
    EXPECT_THROW(map_from_json(j), InvalidInput);
}

TEST(Io, MapWithModelPaths) {
    auto dir = std::filesystem::temp_directory_path() / "shiftsym_io_test";
    std::filesystem::create_directories(dir);
    auto x = pair_groupoid_model(1, 2);
    {
        std::ofstream(dir / "x.json") << dump_json(model_to_json(x));
    }
    auto j = map_to_json(SimpLinMap::identity(x), "x.json", "x.json");
    auto f = map_from_json(j, dir);
    EXPECT_EQ(f.level(2), RatMatrix(RatMatrix::Identity(3, 3)));
    EXPECT_THROW(map_from_json(map_to_json(SimpLinMap::identity(x), "missing.json", "x.json"), dir), InvalidInput);
    std::filesystem::remove_all(dir);
}

TEST(Io, FormRoundTrip) {
    Rng rng(33);
    for (int t = 0; t < 5; ++t) {
        PolyForm f = random_form(rng, 3, t % 3, 3, 4);
        std::string canon = dump_json(form_to_json(f, 1));
        auto back = form_from_json(parse_json(canon), 3);
        EXPECT_EQ(back, f);
        EXPECT_EQ(dump_json(form_to_json(back, 1)), canon);
    }
    Json bad = {{"level", 0}, {"degree", 1}, {"terms", {{{"mono", {0, 0}}, {"idx", {0}}, {"coef", "1"}}}}};
    EXPECT_THROW(form_from_json(bad, 3), InvalidInput);
    bad["terms"][0]["mono"] = {0, 0, 0};
    bad["terms"][0]["idx"] = {1, 0};
    EXPECT_THROW(form_from_json(bad, 3), InvalidInput);
}

TEST(Io, ShiftedFormRoundTrip) {
    auto a = standard_symplectic(2, 1);
    std::string canon = dump_json(shifted_form_to_json(a));
    auto back = shifted_form_from_json(parse_json(canon), a.model());
    EXPECT_EQ(back, a);
    EXPECT_EQ(dump_json(shifted_form_to_json(back)), canon);

    Rng rng(34);
    auto x = two_term_model(random_matrix(rng, 1, 2), 3);
    auto b = random_multiplicative(rng, x, 1);
    canon = dump_json(shifted_form_to_json(b));
    EXPECT_EQ(dump_json(shifted_form_to_json(shifted_form_from_json(parse_json(canon), x))), canon);

    auto j = parse_json(canon);
    j["shift"] = 2;
    EXPECT_THROW(shifted_form_from_json(j, x), InvalidInput);
}

TEST(Io, ReportsAreDeterministic) {
    Rng rng(35);
    auto h = random_hypercover(rng, 1, 2, 3);
    auto r1 = dump_json(hypercover_descent_to_json(verify_hypercover_descent(h.map, 1, 2, 2, 2)));
    auto r2 = dump_json(hypercover_descent_to_json(verify_hypercover_descent(h.map, 1, 2, 2, 2)));
    EXPECT_EQ(r1, r2);
    auto j = parse_json(r1);
    ASSERT_TRUE(j["direct"].is_array());
    for (auto& d : j["direct"])
        for (auto k : {"degree", "dim_source", "dim_target", "induced_rank", "iso"}) EXPECT_TRUE(d.contains(k));

    auto c = cohomology_to_json(truncated_total_cohomology(pair_groupoid_model(1, 3), 0, 1, 2));
    EXPECT_TRUE(c.contains("1"));
}
