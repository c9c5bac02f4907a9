#pragma once

#include "shiftsym/bicomplex.hpp"
#include "shiftsym/coskeleton.hpp"

namespace shiftsym {

// Right inverse of a surjection supported on the pivot columns of its echelon form.
RatMatrix canonical_section(const RatMatrix& f);

// Levelwise right inverses σ_p of f commuting with all faces and degeneracies,
// or nullopt when none exists.
std::optional<std::vector<RatMatrix>> simplicial_section(const SimpLinMap& f);

// One augmented row (fixed column p, form degree q, weight w) of forms on the
// Čech nerve: position r = -1 is Ω^q(Y_p), position r >= 0 is Ω^q(Z(r, p)).
struct HomotopyRow {
    int column = 0, q = 0, weight = 0;
    std::vector<Subspace<Rational>> spaces;  // spaces[r + 1]
    std::vector<RatMatrix> delta;            // delta[r + 1] : spaces[r + 1] -> spaces[r + 2]
    std::vector<RatMatrix> op;               // op[r + 1] = σ_{-1}^* : spaces[r + 2] -> spaces[r + 1]
    std::optional<int> failure;              // first position where sδ + δs != id
    bool pass() const { return !failure; }
};

struct HomotopyOperatorData {
    CechNerve nerve;
    SimpLinMap map;                  // f : X -> Y
    std::vector<RatMatrix> section;  // σ_p : Y_p -> X_p
    // extra[p][r + 1] = σ_{-1} : Z(r, p) -> Z(r + 1, p), with Z(-1, p) = Y_p
    std::vector<std::vector<RatMatrix>> extra;
    bool face_zero = false;    // d_0 σ_{-1} = id
    bool face_shift = false;   // d_i σ_{-1} = σ_{-1} d_{i-1}, i > 0
    bool degen_shift = false;  // s_i σ_{-1} = σ_{-1} s_{i-1}, i >= 0, with s_{-1} = σ_{-1}
    bool horizontal = false;   // σ_{-1} commutes with the horizontal structure maps
    std::vector<HomotopyRow> rows;
    bool axioms() const { return face_zero && face_shift && degen_shift; }
    bool pass() const;
};

// σ_{-1}(x_0, ..., x_r) = (σ f x_0, x_0, ..., x_r) on the Čech nerve of a linear
// surjection f : X_0 -> Y (levels 0..levels), with rows of normalized forms of
// weight <= max_weight.  Throws PreconditionError unless f σ = id.
HomotopyOperatorData extra_codegeneracy(const RatMatrix& f, const RatMatrix& section, int levels, int max_weight);

// Columnwise version on cech_nerve(f, rows) with rows laid out like the
// k-truncated triple complex of total degree <= top.
HomotopyOperatorData extra_codegeneracy(const SimpLinMap& f, const std::vector<RatMatrix>& section, int rows, int k,
                                        int max_weight, int top);

struct NerveDescentReport {
    RatMatrix section;
    HomotopyOperatorData homotopy;
    std::vector<DegreeComparison> degrees;  // f^* : H(Y) -> H(Tot Ω(N(X/Y)))
    bool pass() const;
};

// Truncated de Rham cohomology of Y against the k-truncated total cohomology of
// the Čech nerve of f, in degrees 0..max_degree.  Computes a section if none is given.
NerveDescentReport verify_nerve_descent(const RatMatrix& f, std::optional<RatMatrix> section, int k, int max_weight,
                                        int max_degree);

struct TripleLemmaReport {
    std::optional<HomotopyOperatorData> homotopy;  // when f has a simplicial section
    std::string row_certificate;                   // "homotopy" or "ranks"
    bool cochain_map = false;
    std::vector<DegreeComparison> degrees;  // augmentation Tot Ω(Y) -> Tot of the triple complex
    bool pass() const;
};

// The augmented triple complex of cech_nerve(f): certifies exactness of the
// rows, then compares total cohomology in degrees 0..max_degree.  Throws
// PreconditionError when some row is not exact.
TripleLemmaReport verify_triple_lemma(const SimpLinMap& f, int k, int max_weight, int max_degree);

// Retract of φ : Ŵ -> V for one tower step f̃ : U = cosk_m -> V = cosk_{m-1}.
struct CoskeletonRetract {
    int m = 0;
    SimpLinMap tower_map;  // f̃
    CechNerve nerve;       // W_{ij} = N_i(U_j / V_j)
    SimpLinMap phi;        // (u_0, ..., u_l) ↦ f̃(u_0)
    SimpLinMap s;          // u ↦ (u, ..., u)
    SimpLinMap g;          // last component up to level m, coskeletal extension above
    bool simplicial = false;
    bool retraction = false;          // g ∘ s = id
    bool factorization = false;       // f̃ ∘ g = φ
    bool section_compatible = false;  // φ ∘ s = f̃
    std::vector<bool> g_bijective;    // per level
    bool pass() const { return simplicial && retraction && factorization && section_compatible; }
};

CoskeletonRetract coskeleton_retract(const SimpLinMap& f, int m);

struct RetractDegree {
    int degree = 0;
    Index dim_a = 0, dim_b = 0, dim_c = 0;  // H(A), H(B), H(C) for f : A -> B, φ : C -> B
    Index rank_f = 0, rank_phi = 0, rank_g = 0, rank_s = 0;
    bool phi_iso = false;
    bool chase_injective = false;   // g^* f^* = φ^* injective
    bool chase_surjective = false;  // f^* = s^* φ^* with s^* surjective
    bool direct_iso = false;        // f^* computed outright
    bool pass() const { return phi_iso && chase_injective && chase_surjective && direct_iso; }
};

struct RetractLemmaReport {
    std::vector<RetractDegree> degrees;
    bool pass() const;
};

// Throws PreconditionError unless g ∘ s = id and f ∘ g = φ.
RetractLemmaReport verify_retract_lemma(const SimpLinMap& phi, const SimpLinMap& f, const SimpLinMap& g,
                                        const SimpLinMap& s, int k, int max_weight, int max_degree);

struct HypercoverDescentOptions {
    bool ez_route = true;
    bool tower_route = false;
};

struct HypercoverDescentReport {
    std::vector<DegreeComparison> direct;  // f^* : H(Y) -> H(X)
    std::optional<TripleLemmaReport> triple;
    std::vector<DegreeComparison> ez;  // Tot of the triple complex -> Tot Ω(diagonal)
    bool ez_cochain_map = false;
    bool routes_agree = false;
    std::vector<RetractLemmaReport> tower;  // one per tower step
    bool pass() const;
};

// f^* on k-truncated total cohomology in degrees 0..max_degree, computed
// outright; the Eilenberg-Zilber and tower routes run as cross-checks.
HypercoverDescentReport verify_hypercover_descent(const SimpLinMap& f, int n, int k, int max_weight, int max_degree,
                                                  HypercoverDescentOptions options = {});

}  // namespace shiftsym
