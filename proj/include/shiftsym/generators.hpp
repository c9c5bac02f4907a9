#pragma once

// Seeded random instances for property tests and the selftest battery.

#include "shiftsym/symplectic.hpp"

#include <random>

namespace shiftsym {

using Rng = std::mt19937_64;

RatMatrix random_matrix(Rng& rng, Index rows, Index cols, int lo = -2, int hi = 2, double density = 0.7);
RatMatrix random_invertible(Rng& rng, Index n);

// Chain complex in degrees 0..top with dims in [0, max_dim].
ChainComplexQ random_complex(Rng& rng, int top, Index max_dim);
// Direct sum of pieces Q --id--> Q placed in degrees (k+1, k), 0 <= k < top.
ChainComplexQ random_acyclic(Rng& rng, int top, Index max_pieces);
ChainComplexQ direct_sum(const ChainComplexQ& c, const ChainComplexQ& d);

// A complex C' with a chain isomorphism T : C -> C' (d' = T d T^{-1}).
struct ChainIso {
    ChainComplexQ target;
    std::vector<RatMatrix> map;  // per degree 0..top
};
ChainIso random_chain_iso(Rng& rng, const ChainComplexQ& c);

// Hypercover DK(Z) -> DK(C): Z is C ⊕ D (D acyclic) with a twisted
// differential, transported by a random chain isomorphism.
struct RandomHypercover {
    int n = 0;
    ChainComplexQ source_complex;
    ChainComplexQ target_complex;
    std::vector<RatMatrix> chain_map;
    SimpLinMap map;
};
RandomHypercover random_hypercover(Rng& rng, int n, Index max_dim, int levels);
// Same construction over a given target complex.
RandomHypercover random_hypercover_over(Rng& rng, const ChainComplexQ& c, int n, Index max_pieces, int levels);

// Sum of up to `terms` random monomial q-forms of weight in [q, max_weight].
PolyForm random_form(Rng& rng, int dim, int q, int max_weight, int terms);

// Random normalized q-form on X_p with weights in [q, max_weight].
PolyForm random_normalized_form(Rng& rng, const LinSimpSpace& x, int p, int q, int max_weight);
// Random normalized m-shifted 2-form (all components), weights ≤ max_weight.
ShiftedForm random_shifted_form(Rng& rng, const LinSimpSpace& x, int m, int max_weight);
// α = α_m only: a random normalized constant 2-form on X_m with δα_m = 0.
ShiftedForm random_multiplicative(Rng& rng, const LinSimpSpace& x, int m);
// Retries random_multiplicative until it is shifted symplectic for Lie degree n.
std::optional<ShiftedForm> random_symplectic(Rng& rng, const LinSimpSpace& x, int m, int n, int attempts = 20);

// (Q^{2d}, Σ dx_i ∧ dx_{d+i}) as a 0-shifted form on the constant model.
ShiftedForm standard_symplectic(int d, int levels);
// Linear pair groupoid on V = Q^d: X_k = V^{k+1}, d_i drops a factor, s_i repeats one.
LinSimpSpace pair_groupoid_model(Index d, int levels);
// DK(A --ρ--> V) with A in degree 1.
LinSimpSpace two_term_model(const RatMatrix& rho, int levels);

// Hypercovers X <-g- Z -h-> Y: X = DK(c), Z from random_hypercover_over, and
// Y = DK(c') for a random chain isomorphism T : c -> c', h = DK(T ∘ g') with g' a random
// chain homotopy perturbation of g (kept only when h stays a hypercover).
struct RandomZigZag {
    ChainComplexQ x_complex, y_complex, z_complex;
    SimpLinMap g, h;
};
RandomZigZag random_zigzag(Rng& rng, const ChainComplexQ& c, int n, Index max_pieces, int levels);

}  // namespace shiftsym
