#pragma once

#include "shiftsym/linmodel.hpp"

namespace shiftsym {

enum class TangentPath { HornKernel, DegeneracyQuotient };

// Tangent complex at the base point 0, degrees 0..n.
struct TangentComplexData {
    int n = 0;
    TangentPath path = TangentPath::HornKernel;
    ChainComplexQ complex;
    // HornKernel: 𝒯_l ⊂ X_l.  DegeneracyQuotient: columns [degenerate part | complement] of X_l,
    // with the quotient identified with the complement.
    std::vector<Subspace<Rational>> inclusions;
    std::vector<Index> degenerate_dims;
};

// 𝒯_l X = ker(p^l_l : X_l -> Hom(Λ^l_l, X)); 𝒯_0 X = X_0.
Subspace<Rational> tangent_space(const LinSimpSpace& x, int l);

// Horn-kernel path with ∂ = (-1)^l d_l.  Checks the Lie n-groupoid condition
// first unless `verify_lie` is false.
TangentComplexData tangent_complex(const LinSimpSpace& x, int n, bool verify_lie = true);

// X_l / Σ_i im s_i with the alternating sum of faces.
TangentComplexData tangent_complex_quotient(const LinSimpSpace& x, int n);

// The composite 𝒯_l ⊂ X_l -> X_l / degenerate, per degree.
std::map<int, RatMatrix> tangent_comparison(const TangentComplexData& kernel_path,
                                            const TangentComplexData& quotient_path);

CohomologyReport tangent_homology(const TangentComplexData& t);

// f_l restricted to the tangent spaces; throws PreconditionError when an image
// leaves the target tangent space.
std::map<int, RatMatrix> induced_tangent_map(const SimpLinMap& f, const TangentComplexData& source,
                                             const TangentComplexData& target);

struct QuasiIsoReport {
    std::vector<DegreeComparison> degrees;
    bool pass() const;
};

QuasiIsoReport check_quasi_iso(const SimpLinMap& f, int n, bool verify_lie = true);

}  // namespace shiftsym
