// Acceptance suite: one PASS/FAIL line per criterion, exact checks, enforced time bounds.

#include "oracle.hpp"
#include "shiftsym/generators.hpp"
#include "shiftsym/io.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace shiftsym;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Result {
    bool pass = true;
    std::string detail;
    double bound = 0;  // seconds; 0 = checked inside the criterion
};

// Fails the criterion with a reason; keeps the first reason.
struct Tally {
    bool ok = true;
    std::string why;
    void expect(bool c, const std::string& what) {
        if (!c && ok) why = what;
        ok = ok && c;
    }
};

ChainComplexQ two_term(const RatMatrix& rho) { return ChainComplexQ(Orientation::Chain, 0, {rho.rows(), rho.cols()}, {rho}); }

// ---- 1. simplicial identities -------------------------------------------------

// All five identity families, by direct matrix products.
bool model_identities(const LinSimpSpace& x) {
    const int L = x.max_level();
    auto d = [&](int m, int i) -> const RatMatrix& { return x.face(m, i); };
    auto s = [&](int m, int i) -> const RatMatrix& { return x.degeneracy(m, i); };
    for (int m = 2; m <= L; ++m)
        for (int j = 1; j <= m; ++j)
            for (int i = 0; i < j; ++i)
                if (d(m - 1, i) * d(m, j) != d(m - 1, j - 1) * d(m, i)) return false;
    for (int m = 0; m < L; ++m)
        for (int j = 0; j <= m; ++j) {
            RatMatrix id = RatMatrix::Identity(x.dim(m), x.dim(m));
            if (d(m + 1, j) * s(m, j) != id || d(m + 1, j + 1) * s(m, j) != id) return false;
            for (int i = 0; i <= m + 1; ++i) {
                if (i < j && d(m + 1, i) * s(m, j) != s(m - 1, j - 1) * d(m, i)) return false;
                if (i > j + 1 && d(m + 1, i) * s(m, j) != s(m - 1, j) * d(m, i - 1)) return false;
            }
            for (int i = 0; m + 2 <= L && i <= j; ++i)
                if (s(m + 1, i) * s(m, j) != s(m + 1, j + 1) * s(m, i)) return false;
        }
    return true;
}

bool shape_identities(const SimplicialShape& sh) {
    const int L = sh.max_level();
    for (int m = 0; m <= L; ++m)
        for (std::size_t x = 0; x < sh.count(m); ++x) {
            for (int j = 1; m >= 2 && j <= m; ++j)
                for (int i = 0; i < j; ++i)
                    if (sh.face(m - 1, i, sh.face(m, j, x)) != sh.face(m - 1, j - 1, sh.face(m, i, x))) return false;
            if (m == L) continue;
            for (int j = 0; j <= m; ++j) {
                auto y = sh.degeneracy(m, j, x);
                if (sh.face(m + 1, j, y) != x || sh.face(m + 1, j + 1, y) != x) return false;
                for (int i = 0; i <= m + 1; ++i) {
                    if (i < j && sh.face(m + 1, i, y) != sh.degeneracy(m - 1, j - 1, sh.face(m, i, x))) return false;
                    if (i > j + 1 && sh.face(m + 1, i, y) != sh.degeneracy(m - 1, j, sh.face(m, i - 1, x))) return false;
                }
                for (int i = 0; m + 2 <= L && i <= j; ++i)
                    if (sh.degeneracy(m + 1, i, y) != sh.degeneracy(m + 1, j + 1, sh.degeneracy(m, i, x))) return false;
            }
        }
    return true;
}

Result simplicial_identities() {
    Rng rng(101);
    std::vector<LinSimpSpace> models;
    for (Index d = 1; d <= 2; ++d) models.push_back(pair_groupoid_model(d, 4));
    for (Index d = 0; d <= 2; ++d) models.push_back(LinSimpSpace::constant(d, 3));
    for (int t = 0; t < 4; ++t) models.push_back(two_term_model(random_matrix(rng, 1 + t % 2, 2), 4));
    for (int t = 0; t < 4; ++t) models.push_back(dold_kan(random_complex(rng, 1 + t % 2, 2), 4));
    for (int t = 0; t < 3; ++t) {
        auto h = random_hypercover(rng, 1 + t % 2, 2, 3);
        models.push_back(h.map.source());
        models.push_back(h.map.target());
    }
    std::vector<SimplicialShape> shapes;
    for (int m = 0; m <= 3; ++m) shapes.push_back(standard_simplex(m, 3));
    for (int j = 0; j <= 2; ++j) shapes.push_back(horn(2, j));
    for (int j = 0; j <= 3; ++j) shapes.push_back(horn(3, j));
    shapes.push_back(boundary(2));
    shapes.push_back(boundary(3));
    shapes.push_back(nerve_groupoid(FiniteGroupoid::pair_groupoid(2), 3));
    shapes.push_back(nerve_groupoid(FiniteGroupoid::pair_groupoid(3), 2));
    shapes.push_back(nerve_groupoid(FiniteGroupoid::cyclic_group(3), 3));
    shapes.push_back(skeleton(standard_simplex(3, 3), 1));

    Tally t;
    int mutations = 0, detected = 0;
    double worst = 0;
    for (std::size_t k = 0; k < models.size(); ++k) {
        auto start = Clock::now();
        const auto& x = models[k];
        t.expect(x.validate().ok && model_identities(x), "model " + std::to_string(k) + " fails");
        Json j = model_to_json(x);
        for (const char* table : {"face", "degen"})
            for (auto& [key, m] : j[table].items()) {
                if (m.empty() || m[0].empty()) continue;
                std::uniform_int_distribution<std::size_t> r(0, m.size() - 1), c(0, m[0].size() - 1);
                Json mutated = j;
                auto& entry = mutated[table][key][r(rng)][c(rng)];
                entry = to_string(parse_rational(entry.get<std::string>()) + 1);
                auto y = model_from_json(mutated);
                bool oracle = model_identities(y), lib = y.validate().ok;
                t.expect(oracle == lib, "model mutation verdict differs at " + std::string(table) + " " + key);
                ++mutations;
                detected += !lib;
            }
        worst = std::max(worst, seconds_since(start));
    }
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        auto start = Clock::now();
        const auto& sh = shapes[k];
        t.expect(sh.validate().ok && shape_identities(sh), "shape " + std::to_string(k) + " fails");
        Json j = shape_to_json(sh);
        for (const char* table : {"face", "degen"})
            for (auto& [key, row] : j[table].items()) {
                int level = std::stoi(key.substr(0, key.find(','))) + (table[0] == 'f' ? -1 : 1);
                if (row.empty() || sh.count(level) < 2) continue;
                std::uniform_int_distribution<std::size_t> r(0, row.size() - 1);
                Json mutated = j;
                auto& entry = mutated[table][key][r(rng)];
                auto target = *sh.find(level, entry.get<std::string>());
                entry = sh.name(level, (target + 1) % sh.count(level));
                auto y = shape_from_json(mutated);
                bool oracle = shape_identities(y), lib = y.validate().ok;
                t.expect(oracle == lib, "shape mutation verdict differs at " + std::string(table) + " " + key);
                ++mutations;
                detected += !lib;
            }
        worst = std::max(worst, seconds_since(start));
    }
    t.expect(detected > 0, "no mutation detected");
    t.expect(worst < 1.0, "slowest model took " + std::to_string(worst) + " s");
    std::ostringstream s;
    s << models.size() << " models, " << shapes.size() << " shapes valid; " << mutations << " single-entry mutations, "
      << detected << " detected, validator agrees with oracle on all; slowest " << worst << " s";
    return {t.ok, t.ok ? s.str() : t.why};
}

// ---- 2. Lie 1-groupoid recovery -----------------------------------------------

Result lie_recovery() {
    Tally t;
    for (Index d = 1; d <= 2; ++d) {
        auto r = check_lie_n_groupoid(pair_groupoid_model(d, 4), 1);
        t.expect(r.pass(), "pair groupoid fails for d = " + std::to_string(d));
        int horns = 0;
        for (auto& h : r.horns) {
            ++horns;
            t.expect(h.restriction.source_dim == d * (h.m + 1), "level dimension");
            if (h.m >= 2) t.expect(h.unique_required && h.restriction.bijective(), "Kan! fails");
        }
        // horns (m, j), 1 <= m <= 4
        t.expect(horns == 2 + 3 + 4 + 5, "horn count " + std::to_string(horns));
    }
    return {t.ok, t.ok ? "pair groupoid on Q, Q^2: all 14 horns fill, uniquely for m = 2..4" : t.why, 1.0};
}

// ---- 3. hypercovers: levelwise surjective, tangent quasi-isomorphism ---------

Index homology_dim(const ChainComplexQ& c, int l) {
    return c.dim(l) - oracle::naive_rank(c.out(l)) - oracle::naive_rank(c.out(l + 1));
}

Result hypercover_properties() {
    Rng rng(303);
    Tally t;
    int count = 0;
    for (int k = 0; k < 100; ++k) {
        int n = 1 + k % 2;
        auto h = random_hypercover(rng, n, 1 + k % 2, n + 2);
        for (int l = 0; l <= n; ++l)
            t.expect(h.source_complex.dim(l) <= 4 && h.target_complex.dim(l) <= 4, "complex dimension above 4");
        t.expect(check_hypercover(h.map, n).pass(), "not a hypercover");
        for (int l = 0; l <= h.map.max_level(); ++l)
            t.expect(oracle::naive_rank(h.map.level(l)) == h.map.target().dim(l), "not surjective at level " + std::to_string(l));
        auto q = check_quasi_iso(h.map, n);
        t.expect(q.pass(), "tangent map not a quasi-isomorphism, instance " + std::to_string(k));
        for (auto& d : q.degrees)
            t.expect(d.dim_target == homology_dim(h.target_complex, d.degree), "tangent homology differs from oracle");
        ++count;
    }
    return {t.ok, t.ok ? std::to_string(count) + " hypercovers (n = 1, 2): surjective at every level, quasi-iso on tangent complexes" : t.why,
            60.0};
}

// ---- 4. 0-shifted recovery -------------------------------------------------------

Result zero_shifted() {
    Rng rng(404);
    Tally t;
    int deficient = 0;
    for (int d = 1; d <= 3; ++d) {
        t.expect(check_shifted_symplectic(standard_symplectic(d, 2), 0).pass(), "standard form fails");
        for (int r = 0; r < d; ++r) {
            RatMatrix j = RatMatrix::Zero(2 * d, 2 * d);
            for (int i = 0; i < r; ++i) {
                j(i, r + i) = 1;
                j(r + i, i) = -1;
            }
            RatMatrix p = random_invertible(rng, 2 * d);
            RatMatrix g = p.transpose() * j * p;
            ShiftedForm w(LinSimpSpace::constant(2 * d, 2), 0, 2, {PolyForm::from_gram(g)});
            auto rep = check_shifted_symplectic(w, 0);
            Index expect_rank = oracle::naive_rank(g);
            t.expect(expect_rank == 2 * r, "oracle rank");
            t.expect(!rep.pass(), "rank-deficient form passes");
            t.expect(rep.pairings.size() == 1 && rep.pairings[0].rank == expect_rank, "rank deficit");
            t.expect(rep.message() == "degenerate pairing at l = 0, rank " + std::to_string(expect_rank) + " of " +
                                          std::to_string(2 * d),
                     "message: " + rep.message());
            ++deficient;
        }
    }
    return {t.ok, t.ok ? "standard form passes for d = 1..3; " + std::to_string(deficient) + " rank-deficient forms fail with exact deficit" : t.why,
            1.0};
}

// ---- 5. 1-shifted criterion ------------------------------------------------------

Result one_shifted() {
    Rng rng(505);
    Tally t;
    int symplectic = 0, literal_only = 0, kinds[4] = {0, 0, 0, 0};
    for (int k = 0; k < 50; ++k) {
        Index v = 1 + k % 3;
        int kind = k % 4;
        std::uniform_int_distribution<int> shift(-1, 1);
        RatMatrix rho;
        if (kind == 0) {
            rho = RatMatrix::Zero(v, v + shift(rng));
        } else if (kind == 1) {  // injective
            Index a = v - (k % 8 == 1);
            rho = RatMatrix::Zero(v, a);
            rho.topRows(a) = RatMatrix::Identity(a, a);
            rho = random_invertible(rng, v) * rho;
        } else if (kind == 2) {  // surjective
            Index a = v + (k % 8 == 2);
            rho = random_invertible(rng, v) * RatMatrix(RatMatrix::Identity(v, a));
        } else {
            rho = random_matrix(rng, v, v + shift(rng));
        }
        ++kinds[kind];
        auto x = two_term_model(rho, 4);
        auto alpha = random_multiplicative(rng, x, 1);
        t.expect(alpha.component(1).max_weight() <= 2, "ω₁ not constant");
        bool sym = check_shifted_symplectic(alpha, 1).pass();
        // ker ω ∩ A ∩ ker ρ with A ∩ ker ρ = ker d_0 ∩ ker d_1 on X_1
        RatMatrix g = alpha.component(1).constant_gram();
        RatMatrix stack(g.rows() + x.dim(0) * 2, x.dim(1));
        stack << g, x.face(1, 0), x.face(1, 1);
        bool kernel_zero = oracle::naive_rank(stack) == x.dim(1);
        bool dims = x.dim(1) == 2 * x.dim(0);
        t.expect(sym == (kernel_zero && dims), "disagreement at instance " + std::to_string(k));
        symplectic += sym;
        literal_only += kernel_zero && !dims;
    }
    std::ostringstream s;
    s << "50 instances (ρ = 0: " << kinds[0] << ", injective/surjective: " << kinds[1] + kinds[2] << ", random: " << kinds[3]
      << "), " << symplectic << " symplectic; agrees with kernel condition + dim X_1 = 2 dim X_0 on all; kernel condition "
      << "alone holds without the dimension condition on " << literal_only;
    return {t.ok, t.ok ? s.str() : t.why, 30.0};
}

// ---- 6. gauge invariance ---------------------------------------------------------

Result gauge_invariance() {
    Rng rng(606);
    Tally t;
    int pairs = 0, chain_differs = 0;
    for (int k = 0; k < 50; ++k) {
        int m = k % 3;
        auto c = m == 0 ? two_term(RatMatrix::Identity(2, 2)) : two_term(random_matrix(rng, 1 + k % 2, 1 + k % 2));
        auto x = dold_kan(c, 4);
        auto alpha = m == 0 ? standard_symplectic(1, 4) : random_multiplicative(rng, x, m);
        if (m == 0) x = alpha.model();
        auto phi = random_shifted_form(rng, x, m - 1, 3);
        auto beta = gauge_transform(alpha, phi);
        t.expect(beta == alpha + total_differential(phi), "gauge transform is not α + Dφ");
        auto tc = tangent_complex(x, 1);
        auto la = im_pairing(alpha, tc), lb = im_pairing(beta, tc);
        for (int l = 0; l <= m; ++l) {
            t.expect(la.descended.at(l) == lb.descended.at(l), "descended Gram differs, pair " + std::to_string(k));
            t.expect(la.representatives.at(l) == lb.representatives.at(l), "representatives differ");
        }
        bool differs = false;
        for (auto& [l, g] : la.gram) differs = differs || g != lb.gram.at(l);
        chain_differs += differs;
        ++pairs;
    }
    std::ostringstream s;
    s << pairs << " pairs (m = 0, 1, 2): homology Gram blocks of α and α + Dφ equal entrywise; chain-level blocks differ by "
      << "boundary terms on " << chain_differs;
    return {t.ok, t.ok ? s.str() : t.why, 30.0};
}

// ---- 7. cohomological descent ----------------------------------------------------

Result descent() {
    Rng rng(707);
    Tally t;
    int rows = 0, nontrivial = 0;
    for (int k = 0; k < 50; ++k) {
        int n = 1 + k % 2;
        auto h = random_hypercover(rng, n, 1 + k % 2, n + 2);
        auto r = verify_hypercover_descent(h.map, n, 2, 3, 3);
        t.expect(r.pass(), "descent fails, instance " + std::to_string(k));
        t.expect(r.direct.size() == 4, "degrees 0..3");
        for (auto& d : r.direct) {
            t.expect(d.iso(), "f* not an isomorphism");
            nontrivial += d.dim_source > 0;
        }
        t.expect(r.routes_agree && r.ez_cochain_map, "EZ route disagrees");
        t.expect(r.triple && r.triple->homotopy && r.triple->homotopy->pass(), "row homotopy fails");
        if (r.triple && r.triple->homotopy) rows += static_cast<int>(r.triple->homotopy->rows.size());
        auto nd = verify_nerve_descent(h.map.level(0), std::nullopt, 2, 3, 3);
        t.expect(nd.pass(), "nerve descent fails");
        for (auto& row : nd.homotopy.rows) t.expect(row.pass(), "sδ + δs != id");
        rows += static_cast<int>(nd.homotopy.rows.size());
    }
    std::ostringstream s;
    s << "50 hypercovers, k = 2, W = 3, degrees 0..3: f* iso (" << nontrivial << " nonzero degree groups), EZ and direct "
      << "dims agree, sδ + δs = id on " << rows << " homotopy rows";
    return {t.ok, t.ok ? s.str() : t.why, 300.0};
}

// ---- 8. transfer along zig-zags --------------------------------------------------

Result transfer() {
    Rng rng(808);
    Tally t;
    int done = 0, gauged = 0, nonzero_phi = 0;
    for (int k = 0; k < 20; ++k) {
        Index v = k % 4 == 0 ? 1 : 2;
        RatMatrix rho = random_matrix(rng, v, v);
        auto c = two_term(rho);
        auto x = dold_kan(c, 4);
        auto alpha = random_symplectic(rng, x, 1, 1);
        t.expect(alpha.has_value(), "no symplectic α");
        if (!alpha) continue;
        if (k % 2) {
            *alpha = gauge_transform(*alpha, random_shifted_form(rng, x, 0, 3));
            ++gauged;
        }
        auto zz = random_zigzag(rng, c, 1, 1 + k % 2, 4);
        auto r = transfer_symplectic(zz.g, zz.h, *alpha, 1);
        t.expect(r.feasible && !r.infeasible_weight, "infeasible at instance " + std::to_string(k) + ": " + r.message);
        if (!r.feasible) continue;
        t.expect(r.weight_bound == alpha->max_weight(), "weight bound");
        t.expect(r.verification.pass(), "Morita check fails: " + r.verification.message());
        t.expect(check_shifted_symplectic(r.beta, 1).pass(), "β not symplectic");
        t.expect(pullback_shifted(zz.h, r.beta) == pullback_shifted(zz.g, *alpha) + total_differential(r.phi),
                 "h*β != g*α + Dφ");
        nonzero_phi += !r.phi.is_zero();
        ++done;
    }
    std::ostringstream s;
    s << done << " zig-zags (" << gauged << " with gauge-shifted α, " << nonzero_phi
      << " with nonzero φ): β symplectic, Morita check passes, no infeasibility";
    return {t.ok && done == 20, t.ok ? s.str() : t.why, 300.0};
}

// ---- 9. composition --------------------------------------------------------------

Result composition() {
    Rng rng(909);
    Tally t;
    int done = 0, nonzero = 0;
    for (int k = 0; k < 4; ++k) {
        auto c = two_term(random_matrix(rng, 2, 2));
        auto x = dold_kan(c, 4);
        auto alpha = random_symplectic(rng, x, 1, 1);
        t.expect(alpha.has_value(), "no symplectic α");
        if (!alpha) continue;
        auto z1 = random_zigzag(rng, c, 1, 1, 4);
        auto t1 = transfer_symplectic(z1.g, z1.h, *alpha, 1);
        // (X, α + Dψ) <-g- (Z, g*ψ - φ₁) -h-> (Y, β)
        auto psi = random_shifted_form(rng, x, 0, 3);
        auto z2 = random_zigzag(rng, z1.y_complex, 1, 1, 4);
        auto t2 = transfer_symplectic(z2.g, z2.h, t1.beta, 1);
        t.expect(t1.verification.pass() && t2.verification.pass(), "transfer fails");
        SymplecticMorita e1{gauge_transform(*alpha, psi), t1.beta, pullback_shifted(z1.g, psi) - t1.phi, z1.g, z1.h},
            e2{t1.beta, t2.beta, -t2.phi, z2.g, z2.h};
        auto comp = compose_morita(e1, e2);
        t.expect(check_symplectic_morita(comp, 1).pass(), "composite fails");
        // U = Z ×_Y V with projections f̃′ : U -> Z, g̃ : U -> V
        auto u = fiber_product(e1.g, e2.f);
        for (int l = 0; l <= u.space.max_level(); ++l)
            t.expect(e1.g.level(l) * u.to_first.level(l) == e2.f.level(l) * u.to_second.level(l), "square does not commute");
        auto gauge = pullback_shifted(u.to_first, e1.phi) + pullback_shifted(u.to_second, e2.phi);
        t.expect(comp.phi == gauge, "composite φ is not (f̃′)*φ + g̃*ψ");
        t.expect(pullback_shifted(comp.f, e1.alpha) - pullback_shifted(comp.g, e2.beta) == total_differential(gauge),
                 "(f∘f̃′)*α - (g′∘g̃)*γ != D((f̃′)*φ + g̃*ψ)");
        t.expect(check_symplectic_morita(e1, 1).pass(), "gauge-shifted first leg fails");
        nonzero += !gauge.is_zero();
        ++done;
    }
    t.expect(nonzero == done, "a composite gauge term vanished");
    return {t.ok && done == 4,
            t.ok ? std::to_string(done) + " composites pass (" + std::to_string(nonzero) +
                       " with nonzero gauge term); the gauge term equals D((f̃′)*φ + g̃*ψ) exactly"
                 : t.why,
            60.0};
}

// ---- 10. appendix lemmas ---------------------------------------------------------

Result appendix_lemmas() {
    Rng rng(1010);
    Tally t;
    int triple = 0, retract = 0;
    for (int k = 0; k < 10; ++k) {
        auto h = random_hypercover(rng, 1 + k % 2, 2, 3);
        auto r = verify_triple_lemma(h.map, 2, 3, 2);
        t.expect(r.pass() && r.cochain_map, "triple lemma fails, instance " + std::to_string(k));
        triple += r.pass();
    }
    for (int k = 0; k < 10; ++k) {
        auto h = random_hypercover(rng, 1, 2, 3);
        int m = k % 3;
        auto c = coskeleton_retract(h.map, m);
        t.expect(c.pass(), "coskeleton retract data fail");
        auto r = verify_retract_lemma(c.phi, c.tower_map, c.g, c.s, 2, 2, 2);
        t.expect(r.pass(), "retract lemma fails, instance " + std::to_string(k));
        retract += r.pass();
    }
    return {t.ok, t.ok ? "triple lemma " + std::to_string(triple) + "/10, retract lemma " + std::to_string(retract) + "/10" : t.why,
            120.0};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Result()> run;
    };
    const std::vector<Criterion> criteria = {
        {"simplicial identities", simplicial_identities},
        {"Lie 1-groupoid recovery", lie_recovery},
        {"hypercover surjectivity and tangent quasi-iso", hypercover_properties},
        {"0-shifted recovery", zero_shifted},
        {"1-shifted criterion", one_shifted},
        {"gauge invariance of the IM pairing", gauge_invariance},
        {"cohomological descent", descent},
        {"transfer along zig-zags", transfer},
        {"transitivity", composition},
        {"triple and retract lemmas", appendix_lemmas},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = Clock::now();
        Result r;
        try {
            r = criteria[i].run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        double took = seconds_since(start);
        if (r.bound > 0 && took >= r.bound) {
            r.pass = false;
            r.detail += " [time bound " + std::to_string(r.bound) + " s exceeded]";
        }
        failed += !r.pass;
        std::printf("%s %2zu. %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, r.detail.c_str(), took);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
