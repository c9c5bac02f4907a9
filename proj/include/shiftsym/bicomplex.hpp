#pragma once

#include "shiftsym/forms.hpp"

#include <functional>

namespace shiftsym {

using GradeKey = std::vector<int>;
using BlockKey = std::pair<GradeKey, GradeKey>;
using BlockMap = std::map<BlockKey, RatMatrix>;

// Multigraded pieces with blocks between them, flattened into a cochain
// complex.  Components of one total degree are ordered by key.
class GradedComplex {
  public:
    void add_component(GradeKey key, int degree, Index dim);
    bool has(const GradeKey& key) const { return comps_.count(key) != 0; }
    Index dim(const GradeKey& key) const;
    int degree(const GradeKey& key) const;
    // Adds m : from -> to (summing with an existing block).
    void add_block(const GradeKey& from, const GradeKey& to, const RatMatrix& m);
    const BlockMap& blocks() const { return blocks_; }

    std::vector<GradeKey> in_degree(int n) const;
    Index total_dim(int n) const;
    Index offset(const GradeKey& key) const;
    int min_degree() const;
    int max_degree() const;

    ChainComplexQ total(int lo, int hi) const;

  private:
    struct Comp {
        int degree;
        Index dim;
    };
    std::map<GradeKey, Comp> comps_;
    BlockMap blocks_;
};

// Degreewise matrices of a map given by blocks (source key, target key).
std::map<int, RatMatrix> assemble_map(const GradedComplex& src, const GradedComplex& tgt, const BlockMap& blocks,
                                      int lo, int hi);

// The pullback A^* restricted to subspaces of forms: coordinates in `to` of
// A^*(basis of `from`).  Throws PreconditionError when the image leaves `to`.
RatMatrix restricted_pullback(const RatMatrix& a, const Subspace<Rational>& from, const Subspace<Rational>& to, int q,
                              int w);

// q-forms of weight w on a space of dimension `dim` killed by the pullbacks
// along all `maps` (each into that space).
Subspace<Rational> forms_killed_by(const std::vector<RatMatrix>& maps, Index dim, int q, int w);

// Normalized forms on X_p of degree q and weight w: the kernel of the stacked
// s_i^* for s_i : X_{p-1} -> X_p.
Subspace<Rational> normalized_basis(const LinSimpSpace& x, int p, int q, int w);

// Normalized (or full) k-truncated de Rham double complex Ω^q(X_p), weights
// min_weight..max_weight, total degrees p + q ≤ top.  Per weight the keys are {p, q}
// and D = δ + (-1)^p d.
class FormBicomplex {
  public:
    FormBicomplex(LinSimpSpace x, int k, int max_weight, int top, bool normalized = true, int min_weight = 0);

    const LinSimpSpace& model() const { return x_; }
    int k() const { return k_; }
    int min_weight() const { return min_w_; }
    int max_weight() const { return max_w_; }
    int top() const { return top_; }
    bool normalized() const { return normalized_; }

    bool has(int w, int p, int q) const;
    const Subspace<Rational>& basis(int w, int p, int q) const;
    const GradedComplex& graded(int w) const;
    ChainComplexQ total(int w) const { return graded(w).total(0, top_); }

    // Coordinates of the weight-w part of a form on X_p; nullopt if it is not normalized.
    std::optional<RatVector> coords(int w, int p, const PolyForm& f) const;
    PolyForm form(int w, int p, int q, const Eigen::Ref<const RatVector>& c) const;

  private:
    LinSimpSpace x_;
    int k_, min_w_, max_w_, top_;
    bool normalized_;
    std::map<std::tuple<int, int, int>, Subspace<Rational>> bases_;
    std::map<int, GradedComplex> graded_;
};

// Cohomology of all weight blocks in degrees lo..hi; representatives stacked by
// weight ascending in per-weight total coordinates.
CohomologyReport total_cohomology(const FormBicomplex& b, int lo, int hi);

// Cohomology in degree n of the normalized, k-truncated, weight ≤ W total complex.
CohomologyReport truncated_total_cohomology(const LinSimpSpace& x, int k, int n, int max_weight);

// Per weight, the pullback f^* : Tot(on_target) -> Tot(on_source) for f : X -> Y.
std::map<int, std::map<int, RatMatrix>> pullback_cochain_map(const SimpLinMap& f, const FormBicomplex& on_target,
                                                             const FormBicomplex& on_source);

// Compares cohomology of a per-weight cochain map between total complexes,
// summing weights per degree.
std::vector<DegreeComparison> compare_total(const std::map<int, ChainComplexQ>& src,
                                            const std::map<int, ChainComplexQ>& tgt,
                                            const std::map<int, std::map<int, RatMatrix>>& f, int lo, int hi);

std::map<int, ChainComplexQ> totals(const FormBicomplex& b);

// Normalized k-truncated triple complex K^{r,p,q} = Ω^q(Z_{r,p}) of a
// bisimplicial space, with D = δ₁ + (-1)^r δ₂ + (-1)^{r+p} d and keys {r, p, q}.
class TripleComplex {
  public:
    TripleComplex(BisimplicialSpace z, int k, int max_weight, int top, int min_weight = 0);

    const BisimplicialSpace& space() const { return z_; }
    int k() const { return k_; }
    int min_weight() const { return min_w_; }
    int max_weight() const { return max_w_; }
    int top() const { return top_; }

    bool has(int w, int r, int p, int q) const;
    const Subspace<Rational>& basis(int w, int r, int p, int q) const;
    const GradedComplex& graded(int w) const;
    ChainComplexQ total(int w) const { return graded(w).total(0, top_); }
    std::map<int, ChainComplexQ> totals() const;

  private:
    BisimplicialSpace z_;
    int k_, min_w_, max_w_, top_;
    std::map<std::tuple<int, int, int, int>, Subspace<Rational>> bases_;
    std::map<int, GradedComplex> graded_;
};

// Z(r+p, r+p) -> Z(r, p): p vertical faces d_{r+1}, then r horizontal faces d̄_0.
RatMatrix ez_composite(const BisimplicialSpace& z, int r, int p);

// ω ↦ (d_{r+1}^*)^p (d̄_0^*)^r ω from a form on Z(r, p) to the diagonal level r + p.
PolyForm ez_diagonal(const BisimplicialSpace& z, int r, int p, const PolyForm& w);

// Per weight, the map Tot(triple) -> Tot(diagonal bicomplex) built from ez_diagonal.
std::map<int, std::map<int, RatMatrix>> ez_cochain_map(const TripleComplex& t, const FormBicomplex& diagonal);

// Per weight, ω_{p,q} ↦ (f_p ∘ incl)^* ω at (0, p, q), Tot(bicomplex of Y) -> Tot(triple).
std::map<int, std::map<int, RatMatrix>> augmentation_map(const CechNerve& nerve, const SimpLinMap& f,
                                                         const FormBicomplex& on_target, const TripleComplex& t);

bool is_cochain_map(const std::map<int, ChainComplexQ>& src, const std::map<int, ChainComplexQ>& tgt,
                    const std::map<int, std::map<int, RatMatrix>>& f);

}  // namespace shiftsym
