#include "shiftsym/descent.hpp"

#include <algorithm>
#include <functional>

namespace shiftsym {

namespace {

Rational sign(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

// A ⊗ B with vec(A X B) = (B^T ⊗ A) vec(X) for column-major vec.
RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out = RatMatrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (!is_zero(a(i, j))) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Projection V^blocks -> V onto block t.
RatMatrix block_projection(Index d, int blocks, int t) {
    RatMatrix e = RatMatrix::Zero(d, d * blocks);
    e.block(0, d * t, d, d) = RatMatrix::Identity(d, d);
    return e;
}

bool all_identity(const SimpLinMap& f) {
    for (auto& m : f.levels())
        if (!is_identity(m)) return false;
    return true;
}

bool all_iso(const std::vector<DegreeComparison>& d) {
    return std::all_of(d.begin(), d.end(), [](const DegreeComparison& c) { return c.iso(); });
}

// Increasing maps [m] -> [l] as value lists.
std::vector<std::vector<int>> injections(int m, int l) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == m + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v <= l; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Augmented row spaces and differentials without the homotopy.
struct RowData {
    std::vector<Subspace<Rational>> spaces;
    std::vector<RatMatrix> delta;
};

RowData build_row(const CechNerve& nerve, const SimpLinMap& f, int p, int q, int w, int last) {
    const auto& z = nerve.space;
    RowData row;
    row.spaces.push_back(normalized_basis(f.target(), p, q, w));
    for (int r = 0; r <= last; ++r) {
        std::vector<RatMatrix> degens;
        for (int i = 0; i < r; ++i) degens.push_back(z.vdegen(r - 1, p, i));
        for (int i = 0; i < p; ++i) degens.push_back(z.hdegen(r, p - 1, i));
        row.spaces.push_back(forms_killed_by(degens, z.dim(r, p), q, w));
    }
    const RatMatrix aug = product(f.level(p), nerve.inclusions.at(0).at(static_cast<std::size_t>(p)).basis());
    for (int r = -1; r < last; ++r) {
        RatMatrix pb;
        if (r < 0) {
            pb = pullback_matrix(aug, q, w);
        } else {
            pb = RatMatrix::Zero(FormSpace(static_cast<int>(z.dim(r + 1, p)), q, w).dim(),
                                 FormSpace(static_cast<int>(z.dim(r, p)), q, w).dim());
            for (int i = 0; i <= r + 1; ++i) pb += sign(i) * pullback_matrix(z.vface(r + 1, p, i), q, w);
        }
        const auto& from = row.spaces[static_cast<std::size_t>(r + 1)];
        auto c = row.spaces[static_cast<std::size_t>(r + 2)].checked_coords(product(pb, from.basis()));
        if (!c) throw PreconditionError("Čech differential leaves the normalized forms");
        row.delta.push_back(std::move(*c));
    }
    return row;
}

// Exactness of an augmented row at positions -1..last-1 by ranks.
std::optional<int> first_inexact(const RowData& row) {
    Index previous = 0;
    for (std::size_t i = 0; i < row.delta.size(); ++i) {
        Index rk = rank(row.delta[i]);
        if (rk + previous != row.spaces[i].dim()) return static_cast<int>(i) - 1;
        previous = rk;
    }
    return std::nullopt;
}

// Rows for columns p, degrees q in [k, max_weight], weights q..max_weight,
// positions -1..min(rows, top - p - q).
template <typename Visit>
void for_each_row(const CechNerve& nerve, int k, int max_weight, int top, Visit visit) {
    const auto& z = nerve.space;
    for (int p = 0; p <= z.cols(); ++p)
        for (int q = k; q <= max_weight; ++q)
            for (int w = q; w <= max_weight; ++w) {
                int last = std::min(z.rows(), top - p - q);
                if (last < 0) continue;
                visit(p, q, w, last);
            }
}

HomotopyOperatorData homotopy_data(const SimpLinMap& f, const std::vector<RatMatrix>& section, CechNerve nerve, int k,
                                   int max_weight, int top) {
    const LinSimpSpace& X = f.source();
    const LinSimpSpace& Y = f.target();
    HomotopyOperatorData h;
    h.map = f;
    h.section = section;
    h.nerve = std::move(nerve);
    const auto& z = h.nerve.space;
    const int R = z.rows(), C = z.cols();
    if (static_cast<int>(section.size()) != C + 1) throw InvalidInput("extra_codegeneracy: one section per column");
    for (int p = 0; p <= C; ++p) {
        const RatMatrix& s = section[static_cast<std::size_t>(p)];
        if (s.rows() != X.dim(p) || s.cols() != Y.dim(p) || !is_identity(product(f.level(p), s)))
            throw PreconditionError("extra_codegeneracy: σ_" + std::to_string(p) + " is not a section of f");
    }
    auto incl = [&](int r, int p) -> const Subspace<Rational>& {
        return h.nerve.inclusions.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(p));
    };
    auto aug = [&](int p) { return product(f.level(p), incl(0, p).basis()); };

    h.extra.resize(static_cast<std::size_t>(C) + 1);
    for (int p = 0; p <= C; ++p) {
        const Index d = X.dim(p);
        const RatMatrix& s = section[static_cast<std::size_t>(p)];
        for (int r = -1; r < R; ++r) {
            RatMatrix ambient;
            if (r < 0) {
                ambient = s;
            } else {
                RatMatrix m = RatMatrix::Zero(d * (r + 2), d * (r + 1));
                m.topLeftCorner(d, d) = product(s, f.level(p));
                m.bottomRightCorner(d * (r + 1), d * (r + 1)) = RatMatrix::Identity(d * (r + 1), d * (r + 1));
                ambient = product(m, incl(r, p).basis());
            }
            auto c = incl(r + 1, p).checked_coords(ambient);
            if (!c) throw PreconditionError("extra_codegeneracy: σ_{-1} leaves the fiber power");
            h.extra[static_cast<std::size_t>(p)].push_back(std::move(*c));
        }
    }
    auto ex = [&](int p, int r) -> const RatMatrix& {
        return h.extra[static_cast<std::size_t>(p)][static_cast<std::size_t>(r + 1)];
    };
    // d_i : Z(r, p) -> Z(r-1, p), with d_0 : Z(0, p) -> Y_p the augmentation
    auto vf = [&](int r, int p, int i) { return r == 0 ? aug(p) : z.vface(r, p, i); };

    h.face_zero = h.face_shift = h.degen_shift = h.horizontal = true;
    for (int p = 0; p <= C; ++p) {
        for (int r = -1; r < R; ++r) {
            if (!is_identity(product(vf(r + 1, p, 0), ex(p, r)))) h.face_zero = false;
            for (int i = 1; r >= 0 && i <= r + 1; ++i)
                if (product(z.vface(r + 1, p, i), ex(p, r)) != product(ex(p, r - 1), vf(r, p, i - 1)))
                    h.face_shift = false;
            for (int i = 0; r + 2 <= R && i <= r + 1; ++i) {
                RatMatrix rhs = product(ex(p, r + 1), i == 0 ? ex(p, r) : z.vdegen(r, p, i - 1));
                if (product(z.vdegen(r + 1, p, i), ex(p, r)) != rhs) h.degen_shift = false;
            }
            for (int j = 0; p > 0 && j <= p; ++j) {
                RatMatrix below = r < 0 ? Y.face(p, j) : z.hface(r, p, j);
                if (product(z.hface(r + 1, p, j), ex(p, r)) != product(ex(p - 1, r), below)) h.horizontal = false;
            }
            for (int j = 0; p < C && j <= p; ++j) {
                RatMatrix above = r < 0 ? Y.degeneracy(p, j) : z.hdegen(r, p, j);
                if (product(z.hdegen(r + 1, p, j), ex(p, r)) != product(ex(p + 1, r), above)) h.horizontal = false;
            }
        }
    }

    for_each_row(h.nerve, k, max_weight, top, [&](int p, int q, int w, int last) {
        HomotopyRow row;
        row.column = p;
        row.q = q;
        row.weight = w;
        RowData data = build_row(h.nerve, f, p, q, w, last);
        row.spaces = std::move(data.spaces);
        row.delta = std::move(data.delta);
        for (int r = -1; r < last && !row.failure; ++r) {
            try {
                row.op.push_back(restricted_pullback(ex(p, r), row.spaces[static_cast<std::size_t>(r + 2)],
                                                     row.spaces[static_cast<std::size_t>(r + 1)], q, w));
            } catch (const PreconditionError&) {
                row.failure = r;
                break;
            }
            const auto i = static_cast<std::size_t>(r + 1);
            RatMatrix lhs = product(row.op[i], row.delta[i]);
            if (r >= 0) lhs += product(row.delta[i - 1], row.op[i - 1]);
            if (!is_identity(lhs)) row.failure = r;
        }
        h.rows.push_back(std::move(row));
    });
    return h;
}

struct TripleParts {
    SimpLinMap map;
    CechNerve nerve;
    TripleComplex triple;
    FormBicomplex on_target;
};

TripleLemmaReport triple_lemma(const TripleParts& t, int k, int max_weight, int max_degree) {
    TripleLemmaReport rep;
    const int top = max_degree + 1;
    if (auto section = simplicial_section(t.map)) {
        auto h = homotopy_data(t.map, *section, t.nerve, k, max_weight, top);
        if (h.pass()) rep.row_certificate = "homotopy";
        rep.homotopy = std::move(h);
    }
    if (rep.row_certificate.empty()) {
        for_each_row(t.nerve, k, max_weight, top, [&](int p, int q, int w, int last) {
            if (auto bad = first_inexact(build_row(t.nerve, t.map, p, q, w, last)))
                throw PreconditionError("verify_triple_lemma: row (p = " + std::to_string(p) + ", q = " +
                                        std::to_string(q) + ", weight " + std::to_string(w) +
                                        ") is not exact at position " + std::to_string(*bad));
        });
        rep.row_certificate = "ranks";
    }
    auto aug = augmentation_map(t.nerve, t.map, t.on_target, t.triple);
    auto src = totals(t.on_target);
    auto tgt = t.triple.totals();
    rep.cochain_map = is_cochain_map(src, tgt, aug);
    rep.degrees = compare_total(src, tgt, aug, 0, max_degree);
    return rep;
}

int required_levels(int k, int max_degree) {
    if (max_degree < 0 || k < 0) throw InvalidInput("descent: degrees and k must be >= 0");
    return std::max(max_degree + 1 - k, 0);
}

TripleParts triple_parts(const SimpLinMap& f, int k, int max_weight, int max_degree) {
    const int L = required_levels(k, max_degree);
    if (f.max_level() < L) throw InvalidInput("descent: map needs levels through " + std::to_string(L));
    SimpLinMap ft = f.truncated(L);
    CechNerve nerve = cech_nerve(ft, L);
    TripleComplex triple(nerve.space, k, max_weight, max_degree + 1);
    FormBicomplex on_target(ft.target(), k, max_weight, max_degree + 1);
    return {std::move(ft), std::move(nerve), std::move(triple), std::move(on_target)};
}

}  // namespace

RatMatrix canonical_section(const RatMatrix& f) {
    if (rank(f) != f.rows()) throw PreconditionError("canonical_section: map is not surjective");
    auto s = solve_columns(f, RatMatrix::Identity(f.rows(), f.rows()));
    if (!s) throw PreconditionError("canonical_section: map is not surjective");
    return *s;
}

std::optional<std::vector<RatMatrix>> simplicial_section(const SimpLinMap& f) {
    const int J = f.max_level();
    auto nx = normalize(f.source(), J);
    auto ny = normalize(f.target(), J);
    auto nxi = [&](int j) -> const Subspace<Rational>& { return nx.inclusions[static_cast<std::size_t>(j)]; };
    auto nyi = [&](int j) -> const Subspace<Rational>& { return ny.inclusions[static_cast<std::size_t>(j)]; };
    // Chain map c : N(Y) -> N(X) with N(f) c = id, unknowns vec(c_j) stacked by j.
    std::vector<Index> offset{0};
    for (int j = 0; j <= J; ++j) offset.push_back(offset.back() + nxi(j).dim() * nyi(j).dim());
    std::vector<RatMatrix> eqs;
    std::vector<RatVector> rhs;
    auto place = [&](int j, const RatMatrix& m) {
        RatMatrix row = RatMatrix::Zero(m.rows(), offset.back());
        row.middleCols(offset[static_cast<std::size_t>(j)], m.cols()) = m;
        return row;
    };
    for (int j = 0; j <= J; ++j) {
        const Index b = nyi(j).dim();
        auto nf = nyi(j).checked_coords(product(f.level(j), nxi(j).basis()));
        if (!nf) return std::nullopt;
        eqs.push_back(place(j, kron(RatMatrix::Identity(b, b), *nf)));
        RatMatrix id = RatMatrix::Identity(b, b);
        rhs.push_back(Eigen::Map<const RatVector>(id.data(), b * b));
        if (j == 0) continue;
        const Index a1 = nxi(j - 1).dim();
        RatMatrix left = place(j, kron(RatMatrix::Identity(b, b), nx.complex.out(j)));
        RatMatrix right = place(j - 1, kron(RatMatrix(ny.complex.out(j).transpose()), RatMatrix::Identity(a1, a1)));
        eqs.push_back(left - right);
        rhs.push_back(RatVector::Zero(a1 * b));
    }
    RatMatrix m = vstack(eqs, offset.back());
    RatVector v(m.rows());
    Index at = 0;
    for (auto& r : rhs) {
        v.segment(at, r.size()) = r;
        at += r.size();
    }
    auto sol = solve(m, v);
    if (!sol.feasible) return std::nullopt;
    std::vector<RatMatrix> c;
    for (int j = 0; j <= J; ++j) {
        const Index a = nxi(j).dim(), b = nyi(j).dim();
        RatVector seg = sol.solution.segment(offset[static_cast<std::size_t>(j)], a * b);
        c.push_back(Eigen::Map<const RatMatrix>(seg.data(), a, b));
    }
    // Extend through the Dold-Kan decomposition Y_j = ⊕_η η^* N_k(Y).
    std::vector<RatMatrix> sigma;
    for (int j = 0; j <= J; ++j) {
        std::vector<RatMatrix> ys, xs;
        for (auto& eta : dold_kan_summands(j)) {
            int kk = *std::max_element(eta.begin(), eta.end());
            ys.push_back(product(f.target().structure_map(eta, kk), nyi(kk).basis()));
            xs.push_back(product(f.source().structure_map(eta, kk),
                                 product(nxi(kk).basis(), c[static_cast<std::size_t>(kk)])));
        }
        RatMatrix sy = hstack(ys, f.target().dim(j)), sx = hstack(xs, f.source().dim(j));
        if (sy.rows() != sy.cols() || rank(sy) != sy.rows()) return std::nullopt;
        sigma.push_back(product(sx, inverse(sy)));
    }
    SimpLinMap s(f.target(), f.source(), sigma);
    if (!s.validate().ok || !all_identity(compose(f, s))) return std::nullopt;
    return sigma;
}

bool HomotopyOperatorData::pass() const {
    return axioms() && std::all_of(rows.begin(), rows.end(), [](const HomotopyRow& r) { return r.pass(); });
}

HomotopyOperatorData extra_codegeneracy(const RatMatrix& f, const RatMatrix& section, int levels, int max_weight) {
    if (levels < 0 || max_weight < 0) throw InvalidInput("extra_codegeneracy: negative parameter");
    if (section.rows() != f.cols() || section.cols() != f.rows() || !is_identity(product(f, section)))
        throw PreconditionError("extra_codegeneracy: σ is not a section of f");
    SimpLinMap map(LinSimpSpace::constant(f.cols(), 0), LinSimpSpace::constant(f.rows(), 0), {f});
    return homotopy_data(map, {section}, cech_nerve(map, levels), 0, max_weight, levels + max_weight);
}

HomotopyOperatorData extra_codegeneracy(const SimpLinMap& f, const std::vector<RatMatrix>& section, int rows, int k,
                                        int max_weight, int top) {
    if (rows < 0 || k < 0 || max_weight < 0) throw InvalidInput("extra_codegeneracy: negative parameter");
    return homotopy_data(f, section, cech_nerve(f, rows), k, max_weight, top);
}

bool NerveDescentReport::pass() const { return homotopy.pass() && !degrees.empty() && all_iso(degrees); }

NerveDescentReport verify_nerve_descent(const RatMatrix& f, std::optional<RatMatrix> section, int k, int max_weight,
                                        int max_degree) {
    const int L = required_levels(k, max_degree), top = max_degree + 1;
    NerveDescentReport rep;
    rep.section = section ? *section : canonical_section(f);
    rep.homotopy = extra_codegeneracy(f, rep.section, L, max_weight);
    const CechNerve& nerve = rep.homotopy.nerve;
    LinSimpSpace n = nerve.space.column(0);
    LinSimpSpace y = LinSimpSpace::constant(f.rows(), L);
    std::vector<RatMatrix> aug;
    for (int l = 0; l <= L; ++l)
        aug.push_back(product(f, product(block_projection(f.cols(), l + 1, 0),
                                         nerve.inclusions[static_cast<std::size_t>(l)][0].basis())));
    SimpLinMap a(n, y, std::move(aug));
    FormBicomplex by(y, k, max_weight, top), bn(n, k, max_weight, top);
    rep.degrees = compare_total(totals(by), totals(bn), pullback_cochain_map(a, by, bn), 0, max_degree);
    return rep;
}

bool TripleLemmaReport::pass() const {
    return !row_certificate.empty() && cochain_map && !degrees.empty() && all_iso(degrees);
}

TripleLemmaReport verify_triple_lemma(const SimpLinMap& f, int k, int max_weight, int max_degree) {
    return triple_lemma(triple_parts(f, k, max_weight, max_degree), k, max_weight, max_degree);
}

CoskeletonRetract coskeleton_retract(const SimpLinMap& f, int m) {
    if (m < 0 || m > f.max_level())
        throw InvalidInput("coskeleton_retract: tower step " + std::to_string(m) + " out of range 0.." +
                           std::to_string(f.max_level()));
    auto upper = relative_coskeleton(f, m);
    auto lower = relative_coskeleton(f, m - 1);
    CoskeletonRetract out;
    out.m = m;
    out.tower_map = coskeleton_tower_map(upper, lower);
    const LinSimpSpace& U = upper.space;
    const LinSimpSpace& V = lower.space;
    const int L = out.tower_map.max_level();
    out.nerve = cech_nerve(out.tower_map, L);
    LinSimpSpace W = out.nerve.space.diagonal();
    std::vector<RatMatrix> s, g, phi;
    for (int l = 0; l <= L; ++l) {
        const auto& incl = out.nerve.inclusions[static_cast<std::size_t>(l)][static_cast<std::size_t>(l)];
        const Index d = U.dim(l);
        RatMatrix diag(d * (l + 1), d);
        for (int t = 0; t <= l; ++t) diag.middleRows(d * t, d) = RatMatrix::Identity(d, d);
        auto sc = incl.checked_coords(diag);
        if (!sc) throw PreconditionError("coskeleton_retract: diagonal copy leaves the Čech nerve");
        s.push_back(std::move(*sc));
        phi.push_back(product(out.tower_map.level(l), product(block_projection(d, l + 1, 0), incl.basis())));
        if (l <= m) {
            g.push_back(product(block_projection(d, l + 1, l), incl.basis()));
            continue;
        }
        // U is m-coskeletal over Y: g_l is fixed by g_m on m-simplices and the Y component.
        std::vector<RatMatrix> lhs, rhs;
        for (auto& tau : injections(m, l)) {
            lhs.push_back(U.structure_map(tau, l));
            rhs.push_back(product(g[static_cast<std::size_t>(m)], W.structure_map(tau, l)));
        }
        lhs.push_back(upper.to_target.level(l));
        rhs.push_back(product(lower.to_target.level(l), phi.back()));
        RatMatrix a = vstack(lhs, d), b = vstack(rhs, W.dim(l));
        auto x = solve_columns(a, b);
        if (!x || product(a, *x) != b)
            throw PreconditionError("coskeleton_retract: no coskeletal extension of g at level " + std::to_string(l));
        g.push_back(std::move(*x));
    }
    out.s = SimpLinMap(U, W, std::move(s));
    out.g = SimpLinMap(W, U, std::move(g));
    out.phi = SimpLinMap(W, V, std::move(phi));
    out.simplicial = out.s.validate().ok && out.g.validate().ok && out.phi.validate().ok;
    out.retraction = all_identity(compose(out.g, out.s));
    out.factorization = compose(out.tower_map, out.g).levels() == out.phi.levels();
    out.section_compatible = compose(out.phi, out.s).levels() == out.tower_map.levels();
    for (int l = 0; l <= L; ++l) {
        const RatMatrix& gl = out.g.level(l);
        out.g_bijective.push_back(gl.rows() == gl.cols() && rank(gl) == gl.rows());
    }
    return out;
}

bool RetractLemmaReport::pass() const {
    return !degrees.empty() &&
           std::all_of(degrees.begin(), degrees.end(), [](const RetractDegree& d) { return d.pass(); });
}

RetractLemmaReport verify_retract_lemma(const SimpLinMap& phi, const SimpLinMap& f, const SimpLinMap& g,
                                        const SimpLinMap& s, int k, int max_weight, int max_degree) {
    if (!all_identity(compose(g, s))) throw PreconditionError("verify_retract_lemma: g ∘ s is not the identity");
    if (compose(f, g).levels() != phi.levels()) throw PreconditionError("verify_retract_lemma: f ∘ g differs from φ");
    const int L = required_levels(k, max_degree), top = max_degree + 1;
    if (f.max_level() < L || phi.max_level() < L) throw InvalidInput("verify_retract_lemma: maps need more levels");
    SimpLinMap ft = f.truncated(L), pt = phi.truncated(L), gt = g.truncated(L), st = s.truncated(L);
    FormBicomplex ba(ft.source(), k, max_weight, top), bb(ft.target(), k, max_weight, top),
        bc(pt.source(), k, max_weight, top);
    auto ta = totals(ba), tb = totals(bb), tc = totals(bc);
    auto cf = compare_total(tb, ta, pullback_cochain_map(ft, bb, ba), 0, max_degree);
    auto cphi = compare_total(tb, tc, pullback_cochain_map(pt, bb, bc), 0, max_degree);
    auto cg = compare_total(ta, tc, pullback_cochain_map(gt, ba, bc), 0, max_degree);
    auto cs = compare_total(tc, ta, pullback_cochain_map(st, bc, ba), 0, max_degree);
    RetractLemmaReport rep;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        RetractDegree d;
        d.degree = cf[i].degree;
        d.dim_a = cf[i].dim_target;
        d.dim_b = cf[i].dim_source;
        d.dim_c = cphi[i].dim_target;
        d.rank_f = cf[i].induced_rank;
        d.rank_phi = cphi[i].induced_rank;
        d.rank_g = cg[i].induced_rank;
        d.rank_s = cs[i].induced_rank;
        d.phi_iso = cphi[i].iso();
        d.chase_injective = d.rank_phi == d.dim_b;
        d.chase_surjective = d.phi_iso && d.rank_s == d.dim_a;
        d.direct_iso = cf[i].iso();
        rep.degrees.push_back(d);
    }
    return rep;
}

bool HypercoverDescentReport::pass() const {
    if (direct.empty() || !all_iso(direct) || !routes_agree) return false;
    if (triple && (!triple->pass() || !ez_cochain_map || !all_iso(ez))) return false;
    return std::all_of(tower.begin(), tower.end(), [](const RetractLemmaReport& r) { return r.pass(); });
}

HypercoverDescentReport verify_hypercover_descent(const SimpLinMap& f, int n, int k, int max_weight, int max_degree,
                                                  HypercoverDescentOptions options) {
    if (!check_hypercover(f, n).pass()) throw PreconditionError("verify_hypercover_descent: f is not a hypercover");
    if (!check_lie_n_groupoid(f.source(), n).pass() || !check_lie_n_groupoid(f.target(), n).pass())
        throw PreconditionError("verify_hypercover_descent: source or target is not a Lie n-groupoid");
    const int L = required_levels(k, max_degree), top = max_degree + 1;
    SimpLinMap ft = f.truncated(L);
    HypercoverDescentReport rep;
    FormBicomplex bx(ft.source(), k, max_weight, top), by(ft.target(), k, max_weight, top);
    rep.direct = compare_total(totals(by), totals(bx), pullback_cochain_map(ft, by, bx), 0, max_degree);
    rep.routes_agree = true;
    if (options.ez_route) {
        auto parts = triple_parts(ft, k, max_weight, max_degree);
        rep.triple = triple_lemma(parts, k, max_weight, max_degree);
        FormBicomplex diag(parts.nerve.space.diagonal(), k, max_weight, top);
        auto ez = ez_cochain_map(parts.triple, diag);
        auto tt = parts.triple.totals();
        auto td = totals(diag);
        rep.ez_cochain_map = is_cochain_map(tt, td, ez);
        rep.ez = compare_total(tt, td, ez, 0, max_degree);
        for (std::size_t i = 0; i < rep.direct.size(); ++i) {
            Index y = rep.direct[i].dim_source;
            if (rep.direct[i].dim_target != y || rep.triple->degrees[i].dim_target != y ||
                rep.ez[i].dim_source != y || rep.ez[i].dim_target != y)
                rep.routes_agree = false;
        }
    }
    if (options.tower_route)
        for (int m = 0; m <= L; ++m) {
            auto r = coskeleton_retract(ft, m);
            rep.tower.push_back(verify_retract_lemma(r.phi, r.tower_map, r.g, r.s, k, max_weight, max_degree));
        }
    return rep;
}

}  // namespace shiftsym
