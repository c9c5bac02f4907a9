#pragma once

#include "shiftsym/bicomplex.hpp"
#include "shiftsym/tangent.hpp"

namespace shiftsym {

// m-shifted k-form: α_i of form degree k + m - i on X_i, 0 ≤ i ≤ m.
class ShiftedForm {
  public:
    ShiftedForm() = default;
    ShiftedForm(LinSimpSpace model, int shift, int k, std::vector<PolyForm> components);
    static ShiftedForm zero(LinSimpSpace model, int shift, int k);

    const LinSimpSpace& model() const { return model_; }
    int shift() const { return shift_; }
    int k() const { return k_; }
    const std::vector<PolyForm>& components() const { return comps_; }
    const PolyForm& component(int i) const { return comps_.at(static_cast<std::size_t>(i)); }
    int max_weight() const;
    bool is_zero() const;

    ShiftedForm& operator+=(const ShiftedForm& o);
    ShiftedForm& operator-=(const ShiftedForm& o);
    friend ShiftedForm operator+(ShiftedForm a, const ShiftedForm& b) { return a += b; }
    friend ShiftedForm operator-(ShiftedForm a, const ShiftedForm& b) { return a -= b; }
    ShiftedForm operator-() const;
    // Same shift, degree and components (models compared by shape only).
    friend bool operator==(const ShiftedForm& a, const ShiftedForm& b);

  private:
    LinSimpSpace model_;
    int shift_ = 0;
    int k_ = 0;
    std::vector<PolyForm> comps_;
};

// D = δ + (-1)^p d; an m-shifted k-form goes to an (m+1)-shifted k-form.
ShiftedForm total_differential(const ShiftedForm& a);

// Components i with s_j^* α_i != 0 for some j, ascending.
std::vector<int> unnormalized_components(const ShiftedForm& a);

struct PresymplecticReport {
    bool closed = false;
    bool normalized = false;
    bool multiplicative = false;  // δα_m = 0
    std::optional<int> first_nonclosed;      // component of Dα that is nonzero
    std::optional<int> first_unnormalized;
    bool pass() const { return closed && normalized; }
};
PresymplecticReport check_presymplectic(const ShiftedForm& a);

// (p, q)-shuffles: μ (size p) and ν (size q) partition {0..p+q-1}; sign of the
// permutation (μ, ν).
struct Shuffle {
    std::vector<int> mu, nu;
    int sign = 1;
};
std::vector<Shuffle> shuffles(int p, int q);

// Gram blocks of the IM pairing 𝒯_l × 𝒯_{m-l} -> Q at the base point, and the
// descended blocks on homology representatives.
struct IMForMatrix {
    int shift = 0;
    std::map<int, RatMatrix> gram;
    std::map<int, RatMatrix> descended;
    std::map<int, RatMatrix> representatives;  // homology representatives in 𝒯_l coordinates
};
IMForMatrix im_pairing(const ShiftedForm& a, const TangentComplexData& t);
IMForMatrix im_pairing(const ShiftedForm& a, int n);

// λ(∂u, w) + (-1)^{l+1} λ(u, ∂w) = 0 for u ∈ 𝒯_l, w ∈ 𝒯_{m+1-l}.
bool check_im_multiplicative(const IMForMatrix& im, const TangentComplexData& t);
// block(l, m-l) = -(-1)^{l(m-l)} block(m-l, l)^T
bool check_graded_antisymmetry(const IMForMatrix& im);

struct PairingCheck {
    int l = 0;
    Index dim_l = 0, dim_dual = 0, rank = 0;
    bool perfect() const { return dim_l == dim_dual && rank == dim_l; }
};

struct SymplecticReport {
    PresymplecticReport presymplectic;
    bool lie = false;
    std::string lie_failure;
    std::vector<PairingCheck> pairings;
    bool pass() const;
    // First failure in words, empty on pass.
    std::string message() const;
};
SymplecticReport check_shifted_symplectic(const ShiftedForm& a, int n);

// f^*α for f : Z -> X with α on X.
ShiftedForm pullback_shifted(const SimpLinMap& f, const ShiftedForm& a);
ShiftedForm gauge_transform(const ShiftedForm& a, const ShiftedForm& phi);

struct MoritaReport {
    bool f_hypercover = false;
    bool g_hypercover = false;
    SymplecticReport alpha, beta;
    bool equation = false;  // f^*α - g^*β = Dφ
    bool pass() const { return f_hypercover && g_hypercover && alpha.pass() && beta.pass() && equation; }
    std::string message() const;
};

// (X, α) <-f- (Z, φ) -g-> (Y, β)
struct SymplecticMorita {
    ShiftedForm alpha, beta, phi;
    SimpLinMap f, g;
};
MoritaReport check_symplectic_morita(const SymplecticMorita& e, int n);

struct TransferResult {
    bool feasible = false;
    ShiftedForm beta, phi;  // h^*β = g^*α + Dφ
    int weight_bound = 0;
    std::optional<int> infeasible_weight;
    RatVector certificate;
    MoritaReport verification;  // of (α, β, -φ, g, h)
    std::string message;
};

// Solves Dβ = 0, h^*β - Dφ = g^*α weight by weight (weights ≤ weight_bound,
// default α's maximal weight).
TransferResult transfer_symplectic(const SimpLinMap& g, const SimpLinMap& h, const ShiftedForm& alpha, int n,
                                   std::optional<int> weight_bound = std::nullopt);

// Composite of (X, α) <- Z -> (Y, β) and (Y, β) <- V -> (W, γ) through U = Z ×_Y V.
SymplecticMorita compose_morita(const SymplecticMorita& first, const SymplecticMorita& second);

}  // namespace shiftsym
