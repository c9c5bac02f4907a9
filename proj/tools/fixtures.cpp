#include "fixtures.hpp"

#include "shiftsym/generators.hpp"

namespace shiftsym::fixtures {

std::vector<File> example_files() {
    std::vector<File> out;
    out.push_back({"pair_groupoid.json", model_to_json(pair_groupoid_model(1, 4))});

    auto q2 = LinSimpSpace::constant(2, 2);
    out.push_back({"q2.json", model_to_json(q2)});
    out.push_back({"q2_omega_zero.json", shifted_form_to_json(ShiftedForm::zero(q2, 0, 2))});
    out.push_back({"q2_omega_standard.json", shifted_form_to_json(standard_symplectic(1, 2))});

    // Strict morphism: (Z, g^*α) <-id- (Z, 0) -g-> (X, α) with g a hypercover.
    Rng rng(2024);
    RatMatrix rho(2, 2);
    rho << Rational(1), Rational(0), Rational(0), Rational(0);
    ChainComplexQ c(Orientation::Chain, 0, {2, 2}, {rho});
    auto x = dold_kan(c, 4);
    auto alpha = random_symplectic(rng, x, 1, 1);
    if (!alpha) throw PreconditionError("fixtures: no symplectic form found");
    *alpha = gauge_transform(*alpha, random_shifted_form(rng, x, 0, 3));
    auto hc = random_hypercover_over(rng, c, 1, 2, 4);
    out.push_back({"strict_x.json", model_to_json(x)});
    out.push_back({"strict_z.json", model_to_json(hc.map.source())});
    out.push_back({"strict_alpha.json", shifted_form_to_json(*alpha)});
    out.push_back({"strict_g.json", map_to_json(hc.map, "strict_z.json", "strict_x.json")});
    out.push_back({"strict_h.json", map_to_json(SimpLinMap::identity(hc.map.source()), "strict_z.json", "strict_z.json")});

    // Gauge equivalence (X, α + Dφ) <-id- (X, φ) -id-> (X, α).
    auto phi = random_shifted_form(rng, x, 0, 3);
    out.push_back({"gauge_phi.json", shifted_form_to_json(phi)});
    out.push_back({"gauge_alpha.json", shifted_form_to_json(gauge_transform(*alpha, phi))});
    out.push_back({"gauge_id.json", map_to_json(SimpLinMap::identity(x), "strict_x.json", "strict_x.json")});

    // Zig-zag X <-g- Z -h-> Y through a hypercover with an acyclic factor.
    auto zz = random_zigzag(rng, c, 1, 2, 4);
    out.push_back({"zigzag_z.json", model_to_json(zz.g.source())});
    out.push_back({"zigzag_y.json", model_to_json(zz.h.target())});
    out.push_back({"zigzag_g.json", map_to_json(zz.g, "zigzag_z.json", "strict_x.json")});
    out.push_back({"zigzag_h.json", map_to_json(zz.h, "zigzag_z.json", "zigzag_y.json")});
    return out;
}

}  // namespace shiftsym::fixtures
