#include "oracle.hpp"
#include "shiftsym/generators.hpp"
#include "shiftsym/symplectic.hpp"

#include <gtest/gtest.h>

using namespace shiftsym;

namespace {

RatMatrix mat(Index r, Index c, std::initializer_list<long> v) {
    RatMatrix m(r, c);
    auto it = v.begin();
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

ShiftedForm zero_form_0(Index d) { return ShiftedForm::zero(LinSimpSpace::constant(d, 2), 0, 2); }

// Constant 2-form on X_1 = V ⊕ A of DK(A -> V) pairing dv_i with da_j by b(i, j).
PolyForm pairing_form(const RatMatrix& b) {
    const Index v = b.rows(), a = b.cols();
    RatMatrix g = RatMatrix::Zero(v + a, v + a);
    g.topRightCorner(v, a) = b;
    g.bottomLeftCorner(a, v) = -b.transpose();
    return PolyForm::from_gram(g);
}

// ker ω ∩ 𝒯_1 ∩ ker ∂ at the base point, for the constant part of α_1.
Index criterion_defect(const ShiftedForm& a) {
    auto t = tangent_complex(a.model(), 1, false);
    const RatMatrix& inc = t.inclusions[1].basis();
    RatMatrix g = a.component(1).constant_gram();
    // a = inc·c with ω(a, ·) = 0 and ∂a = 0
    RatMatrix sys = vstack<Rational>({product(RatMatrix(g.transpose()), inc), t.complex.out(1)}, inc.cols());
    return inc.cols() - rank(sys);
}

ChainComplexQ two_term(const RatMatrix& rho) { return ChainComplexQ(Orientation::Chain, 0, {rho.rows(), rho.cols()}, {rho}); }

}  // namespace

TEST(Symplectic, PresymplecticExamples) {
    EXPECT_TRUE(check_presymplectic(zero_form_0(2)).pass());
    EXPECT_TRUE(check_presymplectic(standard_symplectic(1, 2)).pass());
    EXPECT_THROW(check_presymplectic(ShiftedForm::zero(LinSimpSpace::constant(2, 2), 0, 3)), InvalidInput);

    // 1-shifted pair (ω, φ): dφ = 0, dω = δφ, δω = 0
    auto x = two_term_model(mat(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 0}), 4);
    Rng rng(1);
    auto mult = random_multiplicative(rng, x, 1);
    ASSERT_TRUE(check_presymplectic(mult).pass());
    auto psi = ShiftedForm(x, 0, 2, {random_normalized_form(rng, x, 0, 2, 4)});
    auto good = mult + total_differential(psi);
    ASSERT_FALSE(good.component(0).is_zero());
    auto r = check_presymplectic(good);
    EXPECT_TRUE(r.pass());
    EXPECT_TRUE(r.multiplicative);
    EXPECT_TRUE(de_rham_d(good.component(0)).is_zero());
    EXPECT_EQ(de_rham_d(good.component(1)), simplicial_delta(x, 1, good.component(0)));

    PolyForm w(static_cast<int>(x.dim(1)), 2);
    w.add_term({1, 0, 0, 0, 0, 0}, {3, 4}, 1);  // x_v1 da_1 ∧ da_2: normalized, not closed
    auto broken = good + ShiftedForm(x, 1, 2, {PolyForm(3, 3), w});
    auto rb = check_presymplectic(broken);
    EXPECT_FALSE(rb.closed);
    EXPECT_TRUE(rb.normalized);
    PolyForm onv(static_cast<int>(x.dim(1)), 2);
    onv.add_term({0, 0, 0, 0, 0, 0}, {0, 1}, 1);  // dv_1 ∧ dv_2 survives s_0^*
    auto rn = check_presymplectic(good + ShiftedForm(x, 1, 2, {PolyForm(3, 3), onv}));
    EXPECT_FALSE(rn.normalized);
    EXPECT_EQ(rn.first_unnormalized, 1);
}

TEST(Symplectic, Shuffles) {
    EXPECT_EQ(shuffles(1, 1).size(), 2u);
    EXPECT_EQ(shuffles(2, 1).size(), 3u);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) EXPECT_EQ(shuffles(p, q).size(), oracle::binomial(p + q, p));
    auto s = shuffles(1, 1);
    // (μ, ν) = ({1}, {0}) is a transposition
    for (auto& x : s) EXPECT_EQ(x.sign, x.mu.front() == 0 ? 1 : -1);
}

TEST(Symplectic, ZeroShiftedRecovery) {
    auto std1 = standard_symplectic(1, 2);
    auto im = im_pairing(std1, 0);
    EXPECT_EQ(im.gram.at(0), mat(2, 2, {0, 1, -1, 0}));
    for (int d = 1; d <= 3; ++d) EXPECT_TRUE(check_shifted_symplectic(standard_symplectic(d, 2), 0).pass()) << d;

    auto zero = check_shifted_symplectic(zero_form_0(2), 0);
    EXPECT_FALSE(zero.pass());
    EXPECT_EQ(zero.message(), "degenerate pairing at l = 0, rank 0 of 2");

    RatMatrix g = RatMatrix::Zero(4, 4);
    g(0, 1) = 1;
    g(1, 0) = -1;
    ShiftedForm deficient(LinSimpSpace::constant(4, 2), 0, 2, {PolyForm::from_gram(g)});
    auto r = check_shifted_symplectic(deficient, 0);
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.pairings[0].dim_l - r.pairings[0].rank, 2);
}

TEST(Symplectic, OneShiftedPairing) {
    // λ(v, a) = ω(Ts₀ v, a) with the + sign from the single (0,1)-shuffle
    RatMatrix b = mat(2, 2, {1, 2, 0, 1});
    RatMatrix rho = RatMatrix::Zero(2, 2);
    auto x = two_term_model(rho, 4);
    ShiftedForm a(x, 1, 2, {PolyForm(2, 3), pairing_form(b)});
    ASSERT_TRUE(check_presymplectic(a).pass());
    auto t = tangent_complex(x, 1);
    auto im = im_pairing(a, t);
    RatMatrix expect = product(RatMatrix(product(x.degeneracy(0, 0), t.inclusions[0].basis()).transpose()),
                               product(a.component(1).constant_gram(), t.inclusions[1].basis()));
    EXPECT_EQ(im.gram.at(0), expect);
    EXPECT_EQ(im.gram.at(1), RatMatrix(-expect.transpose()));
    EXPECT_TRUE(check_shifted_symplectic(a, 1).pass());
    EXPECT_EQ(criterion_defect(a), 0);
}

TEST(Symplectic, OneShiftedCriterion) {
    Rng rng(2);
    int agree = 0;
    for (int t = 0; t < 24; ++t) {
        Index v = 1 + t % 3, dim_a = t % 4 < 3 ? v : v + 1;
        RatMatrix rho = t % 3 == 0 ? RatMatrix(RatMatrix::Zero(v, dim_a))
                        : t % 3 == 1 ? RatMatrix(RatMatrix::Identity(v, dim_a))
                                     : random_matrix(rng, v, dim_a);
        auto x = two_term_model(rho, 4);
        auto a = random_multiplicative(rng, x, 1);
        bool sym = check_shifted_symplectic(a, 1).pass();
        bool crit = criterion_defect(a) == 0 && x.dim(1) == 2 * x.dim(0);
        EXPECT_EQ(sym, crit) << t;
        agree += sym == crit;
    }
    EXPECT_EQ(agree, 24);
    // mismatched homology: A = 0, V = Q
    auto x = two_term_model(RatMatrix(1, 0), 4);
    auto r = check_shifted_symplectic(random_multiplicative(rng, x, 1), 1);
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.pairings[0].dim_l, 1);
    EXPECT_EQ(r.pairings[0].dim_dual, 0);
}

TEST(Symplectic, MultiplicativityAndAntisymmetry) {
    Rng rng(3);
    for (int t = 0; t < 12; ++t) {
        int n = 1 + t % 2, m = t % 4;
        auto c = random_complex(rng, n, 2);
        auto x = dold_kan(c, std::max(n, m) + 2);
        auto a = random_multiplicative(rng, x, m);
        if (m >= 1) a = a + total_differential(random_shifted_form(rng, x, m - 1, 3));
        ASSERT_TRUE(check_presymplectic(a).pass()) << t;
        auto tc = tangent_complex(x, n);
        auto im = im_pairing(a, tc);
        EXPECT_TRUE(check_im_multiplicative(im, tc)) << t;
        EXPECT_TRUE(check_graded_antisymmetry(im)) << t;
    }
    EXPECT_TRUE(check_im_multiplicative(im_pairing(zero_form_0(2), 0), tangent_complex(LinSimpSpace::constant(2, 2), 0)));

    // ω pairing V and A by a non-symmetric ρᵀB is not multiplicative
    auto x = two_term_model(RatMatrix::Identity(2, 2), 4);
    ShiftedForm a(x, 1, 2, {PolyForm(2, 3), pairing_form(mat(2, 2, {0, 1, 0, 0}))});
    EXPECT_FALSE(check_presymplectic(a).multiplicative);
    auto tc = tangent_complex(x, 1);
    EXPECT_FALSE(check_im_multiplicative(im_pairing(a, tc), tc));
}

TEST(Symplectic, PullbackAndNaturality) {
    Rng rng(4);
    auto a = standard_symplectic(1, 2);
    EXPECT_EQ(pullback_shifted(SimpLinMap::identity(a.model()), a), a);
    for (int t = 0; t < 6; ++t) {
        int n = 1, m = 1;
        auto c = two_term(random_matrix(rng, 2, 2));
        auto x = dold_kan(c, 4);
        auto alpha = random_symplectic(rng, x, m, n);
        ASSERT_TRUE(alpha) << t;
        auto h = random_hypercover_over(rng, c, n, 2, 4);
        auto phi = random_shifted_form(rng, x, m - 1, 3);
        EXPECT_EQ(pullback_shifted(h.map, total_differential(phi)), total_differential(pullback_shifted(h.map, phi)));
        auto pb = pullback_shifted(h.map, *alpha);
        EXPECT_TRUE(check_shifted_symplectic(pb, n).pass()) << t;
        // λ^{g*α}(v, w) = λ^α(Tg v, Tg w)
        auto ts = tangent_complex(h.map.source(), n), tt = tangent_complex(x, n);
        auto tg = induced_tangent_map(h.map, ts, tt);
        auto lz = im_pairing(pb, ts), lx = im_pairing(*alpha, tt);
        for (int l = 0; l <= m; ++l)
            EXPECT_EQ(lz.gram.at(l), product(RatMatrix(tg.at(l).transpose()), product(lx.gram.at(l), tg.at(m - l))));
    }
}

TEST(Symplectic, GaugeTransform) {
    Rng rng(5);
    for (int t = 0; t < 8; ++t) {
        int m = t % 3, n = 1;
        auto c = m == 0 ? two_term(RatMatrix::Identity(2, 2)) : two_term(random_matrix(rng, 2, 2));
        auto x = dold_kan(c, 4);
        auto alpha = m == 0 ? ShiftedForm(x, 0, 2, {PolyForm::from_gram(mat(2, 2, {0, 1, -1, 0}))})
                            : random_multiplicative(rng, x, m);
        auto phi = random_shifted_form(rng, x, m - 1, 3);
        EXPECT_EQ(gauge_transform(alpha, ShiftedForm::zero(x, m - 1, 2)), alpha);
        auto beta = gauge_transform(alpha, phi);
        EXPECT_TRUE(check_presymplectic(beta).pass() == check_presymplectic(alpha).pass());
        auto tc = tangent_complex(x, n);
        auto la = im_pairing(alpha, tc), lb = im_pairing(beta, tc);
        for (int l = 0; l <= m; ++l) EXPECT_EQ(la.descended.at(l), lb.descended.at(l)) << t << " " << l;
        EXPECT_EQ(check_shifted_symplectic(alpha, n).pass(), check_shifted_symplectic(beta, n).pass());
    }
    // chain-level Gram changes by φ(v, ∂a) for m = 1
    auto x2 = two_term_model(mat(2, 2, {1, 0, 0, 0}), 4);
    ShiftedForm phi(x2, 0, 2, {PolyForm::from_gram(mat(2, 2, {0, 1, -1, 0}))});
    auto tc = tangent_complex(x2, 1);
    auto lz = im_pairing(ShiftedForm::zero(x2, 1, 2), tc), lp = im_pairing(total_differential(phi), tc);
    EXPECT_NE(lz.gram.at(0), lp.gram.at(0));
    EXPECT_EQ(lz.descended.at(0), lp.descended.at(0));
}

TEST(Symplectic, MoritaChecks) {
    auto a = standard_symplectic(1, 3);
    auto id = SimpLinMap::identity(a.model());
    SymplecticMorita e{a, a, ShiftedForm::zero(a.model(), -1, 2), id, id};
    EXPECT_TRUE(check_symplectic_morita(e, 0).pass());

    // (Y, f*α) <-id- (Y, 0) -f-> (X, α) for a hypercover f
    Rng rng(6);
    auto c = two_term(random_matrix(rng, 2, 2));
    auto x = dold_kan(c, 4);
    auto alpha = random_symplectic(rng, x, 1, 1);
    ASSERT_TRUE(alpha);
    auto h = random_hypercover_over(rng, c, 1, 2, 4);
    auto y = h.map.source();
    SymplecticMorita strict{pullback_shifted(h.map, *alpha), *alpha, ShiftedForm::zero(y, 0, 2),
                            SimpLinMap::identity(y), h.map};
    EXPECT_TRUE(check_symplectic_morita(strict, 1).pass());

    auto perturbed = strict;
    std::vector<PolyForm> comps = perturbed.alpha.components();
    PolyForm lin(static_cast<int>(y.dim(1)), 2);
    std::vector<int> mono(static_cast<std::size_t>(y.dim(1)), 0);
    mono[0] = 1;
    lin.add_term(mono, {static_cast<int>(y.dim(1)) - 2, static_cast<int>(y.dim(1)) - 1}, 1);
    comps[1] += lin;
    perturbed.alpha = ShiftedForm(y, 1, 2, comps);
    auto r = check_symplectic_morita(perturbed, 1);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.equation);
}

TEST(Symplectic, Transfer) {
    auto a = standard_symplectic(1, 3);
    auto id = SimpLinMap::identity(a.model());
    auto r = transfer_symplectic(id, id, a, 0);
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(r.verification.pass()) << r.message;
    EXPECT_EQ(r.beta, a);

    Rng rng(7);
    for (int t = 0; t < 4; ++t) {
        auto c = two_term(random_matrix(rng, 2, 2));
        auto x = dold_kan(c, 4);
        auto alpha = random_symplectic(rng, x, 1, 1);
        ASSERT_TRUE(alpha);
        if (t % 2 == 1) *alpha = gauge_transform(*alpha, random_shifted_form(rng, x, 0, 3));
        // strict morphism: Z = Y, g = f, h = id
        auto hc = random_hypercover_over(rng, c, 1, 2, 4);
        auto strict = transfer_symplectic(hc.map, SimpLinMap::identity(hc.map.source()), *alpha, 1);
        ASSERT_TRUE(strict.feasible) << strict.message;
        EXPECT_TRUE(strict.verification.pass()) << strict.message;
        // general zig-zag with an acyclic factor
        auto zz = random_zigzag(rng, c, 1, 2, 4);
        auto res = transfer_symplectic(zz.g, zz.h, *alpha, 1);
        ASSERT_TRUE(res.feasible) << res.message;
        EXPECT_TRUE(res.verification.pass()) << res.message;
        EXPECT_TRUE(check_shifted_symplectic(res.beta, 1).pass());
    }
    EXPECT_THROW(transfer_symplectic(id, id, ShiftedForm::zero(a.model(), 0, 2), 0), PreconditionError);
}

TEST(Symplectic, ComposeMorita) {
    Rng rng(8);
    auto c = two_term(random_matrix(rng, 2, 2));
    auto x = dold_kan(c, 4);
    auto alpha = random_symplectic(rng, x, 1, 1);
    ASSERT_TRUE(alpha);
    auto z1 = random_zigzag(rng, c, 1, 1, 4);
    auto t1 = transfer_symplectic(z1.g, z1.h, *alpha, 1);
    ASSERT_TRUE(t1.verification.pass());
    SymplecticMorita e1{*alpha, t1.beta, -t1.phi, z1.g, z1.h};
    auto z2 = random_zigzag(rng, z1.y_complex, 1, 1, 4);
    auto t2 = transfer_symplectic(z2.g, z2.h, t1.beta, 1);
    ASSERT_TRUE(t2.verification.pass());
    SymplecticMorita e2{t1.beta, t2.beta, -t2.phi, z2.g, z2.h};
    auto comp = compose_morita(e1, e2);
    EXPECT_TRUE(check_symplectic_morita(comp, 1).pass()) << check_symplectic_morita(comp, 1).message();

    auto y = e1.beta.model();
    SymplecticMorita ident{e1.beta, e1.beta, ShiftedForm::zero(y, 0, 2), SimpLinMap::identity(y), SimpLinMap::identity(y)};
    EXPECT_TRUE(check_symplectic_morita(compose_morita(e1, ident), 1).pass());
    EXPECT_THROW(compose_morita(e2, e1), InvalidInput);
}
