#include "shiftsym/symplectic.hpp"

namespace shiftsym {

namespace {

// Total-degree-n coordinates of the components of a shifted form (component i at (i, q)).
RatVector total_coords(const FormBicomplex& b, int w, int n, const ShiftedForm& a) {
    const auto& g = b.graded(w);
    RatVector v = RatVector::Zero(g.total_dim(n));
    for (int i = 0; i <= a.shift(); ++i) {
        const PolyForm& c = a.component(i);
        GradeKey key{i, c.degree()};
        auto coords = b.coords(w, i, c);
        if (!coords) throw PreconditionError("transfer: component " + std::to_string(i) + " is not normalized");
        if (!g.has(key)) continue;
        if (g.degree(key) != n) throw InvalidInput("transfer: component outside the expected total degree");
        v.segment(g.offset(key), coords->size()) = *coords;
    }
    return v;
}

// Adds the forms encoded by total-degree-n coordinates to comps[p].
void add_components(const FormBicomplex& b, int w, int n, const RatVector& v, std::vector<PolyForm>& comps) {
    const auto& g = b.graded(w);
    for (auto& key : g.in_degree(n)) {
        int p = key[0], q = key[1];
        comps.at(static_cast<std::size_t>(p)) += b.form(w, p, q, v.segment(g.offset(key), g.dim(key)));
    }
}

}  // namespace

TransferResult transfer_symplectic(const SimpLinMap& g, const SimpLinMap& h, const ShiftedForm& alpha, int n,
                                   std::optional<int> weight_bound) {
    if (g.target().dims() != alpha.model().dims()) throw InvalidInput("transfer: g does not target α's model");
    if (g.source().dims() != h.source().dims()) throw InvalidInput("transfer: g and h have different sources");
    if (alpha.k() != 2) throw InvalidInput("transfer: α must be a shifted 2-form");
    if (!check_hypercover(g, n).pass()) throw PreconditionError("transfer: g is not a hypercover");
    if (!check_hypercover(h, n).pass()) throw PreconditionError("transfer: h is not a hypercover");
    auto sym = check_shifted_symplectic(alpha, n);
    if (!sym.pass()) throw PreconditionError("transfer: α is not shifted symplectic (" + sym.message() + ")");

    const int m = alpha.shift(), k = 2, top = m + 3;
    const LinSimpSpace& Y = h.target();
    const LinSimpSpace& Z = g.source();
    if (Y.max_level() < top - k || Z.max_level() < top - k)
        throw InvalidInput("transfer: models need levels through " + std::to_string(top - k));
    TransferResult r;
    r.weight_bound = weight_bound.value_or(alpha.max_weight());
    auto ga = pullback_shifted(g, alpha);

    std::vector<PolyForm> beta, phi;
    for (int i = 0; i <= m; ++i) beta.emplace_back(static_cast<int>(Y.dim(i)), k + m - i);
    for (int i = 0; i < m; ++i) phi.emplace_back(static_cast<int>(Z.dim(i)), k + m - 1 - i);

    for (int w = k; w <= r.weight_bound; ++w) {
        FormBicomplex by(Y, k, w, top, true, w), bz(Z, k, w, top, true, w);
        RatVector rhs = total_coords(bz, w, m + 2, ga);
        if (is_zero_matrix(rhs)) continue;
        RatMatrix dy = by.total(w).out(m + 2);
        RatMatrix dz = bz.total(w).out(m + 1);
        RatMatrix hs = pullback_cochain_map(h, by, bz).at(w).at(m + 2);
        const Index nb = dy.cols(), nf = dz.cols();
        RatMatrix sys = RatMatrix::Zero(dy.rows() + hs.rows(), nb + nf);
        sys.topLeftCorner(dy.rows(), nb) = dy;
        sys.bottomLeftCorner(hs.rows(), nb) = hs;
        sys.bottomRightCorner(dz.rows(), nf) = -dz;
        RatVector b = RatVector::Zero(sys.rows());
        b.tail(rhs.size()) = rhs;
        auto sol = solve(sys, b);
        if (!sol.feasible) {
            r.infeasible_weight = w;
            r.certificate = sol.certificate;
            r.message = "no solution within weight " + std::to_string(w) + " of bound " +
                        std::to_string(r.weight_bound) + "; raise the weight bound";
            return r;
        }
        add_components(by, w, m + 2, sol.solution.head(nb), beta);
        add_components(bz, w, m + 1, sol.solution.tail(nf), phi);
    }
    r.feasible = true;
    r.beta = ShiftedForm(Y, m, k, std::move(beta));
    r.phi = ShiftedForm(Z, m - 1, k, std::move(phi));
    r.verification = check_symplectic_morita({alpha, r.beta, -r.phi, g, h}, n);
    r.message = r.verification.message();
    return r;
}

}  // namespace shiftsym
