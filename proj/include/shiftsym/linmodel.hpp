#pragma once

#include "shiftsym/chain_complex.hpp"
#include "shiftsym/ssets.hpp"

#include <memory>

namespace shiftsym {

// Simplicial vector space over Q truncated at level L: dims per level, face
// matrices d_i : X_m -> X_{m-1} and degeneracy matrices s_i : X_m -> X_{m+1}.
// Copies share the immutable data.
class LinSimpSpace {
  public:
    LinSimpSpace() = default;
    // faces[m][i] for m = 1..L (faces[0] empty); degens[m][i] for m = 0..L-1.
    LinSimpSpace(std::vector<Index> dims, std::vector<std::vector<RatMatrix>> faces,
                 std::vector<std::vector<RatMatrix>> degens);

    static LinSimpSpace constant(Index dim, int levels);
    static LinSimpSpace point(int levels) { return constant(0, levels); }

    int max_level() const { return static_cast<int>(data_->dims.size()) - 1; }
    Index dim(int level) const { return data_->dims.at(static_cast<std::size_t>(level)); }
    const std::vector<Index>& dims() const { return data_->dims; }
    const RatMatrix& face(int level, int i) const;
    const RatMatrix& degeneracy(int level, int i) const;
    const std::vector<std::vector<RatMatrix>>& face_table() const { return data_->faces; }
    const std::vector<std::vector<RatMatrix>>& degeneracy_table() const { return data_->degens; }

    // X(f) : X_n -> X_k for a monotone f : [k] -> [n] given by its values.
    RatMatrix structure_map(const std::vector<int>& f, int n) const;

    ValidationReport validate() const;
    LinSimpSpace truncated(int levels) const;
    LinSimpSpace with_face(int level, int i, RatMatrix m) const;

    friend bool operator==(const LinSimpSpace& a, const LinSimpSpace& b);

  private:
    struct Data {
        std::vector<Index> dims;
        std::vector<std::vector<RatMatrix>> faces;
        std::vector<std::vector<RatMatrix>> degens;
    };
    std::shared_ptr<const Data> data_ = std::make_shared<Data>(Data{{0}, {{}}, {{}}});
};

class SimpLinMap {
  public:
    SimpLinMap() = default;
    SimpLinMap(LinSimpSpace source, LinSimpSpace target, std::vector<RatMatrix> levels);

    static SimpLinMap identity(const LinSimpSpace& x);
    static SimpLinMap to_point(const LinSimpSpace& x);

    const LinSimpSpace& source() const { return source_; }
    const LinSimpSpace& target() const { return target_; }
    int max_level() const { return static_cast<int>(levels_.size()) - 1; }
    const RatMatrix& level(int m) const { return levels_.at(static_cast<std::size_t>(m)); }
    const std::vector<RatMatrix>& levels() const { return levels_; }

    ValidationReport validate() const;
    SimpLinMap truncated(int levels) const;

  private:
    LinSimpSpace source_, target_;
    std::vector<RatMatrix> levels_;
};

// g ∘ f
SimpLinMap compose(const SimpLinMap& g, const SimpLinMap& f);

struct HomSpace {
    SimplicialShape shape;
    std::vector<SimplicialShape::Simplex> simplices;  // nondegenerate, shape order
    std::vector<Index> offsets;                       // block starts in stacked coordinates
    RatMatrix relations;                              // face relations on stacked coordinates
    Subspace<Rational> solutions;                     // kernel of `relations`

    Index dim() const { return solutions.dim(); }
    Index stacked_dim() const { return offsets.back(); }
    // Evaluation at the t-th nondegenerate simplex, HomSpace coords -> X_level.
    RatMatrix evaluation(std::size_t t) const;
};

HomSpace hom_from_shape(const SimplicialShape& s, const LinSimpSpace& x);

// Stacked values X_M -> ⊕_τ X_{dim τ} of the restriction to a sub-shape of Delta^M.
RatMatrix restriction_from_simplex(const SimplicialShape& s, const LinSimpSpace& x);

// p^m_j : X_m -> Hom(Λ^m_j, X), in the HomSpace basis.
RatMatrix horn_map(const LinSimpSpace& x, int m, int j);

// Restriction X_M -> Hom(S, X) ×_{Hom(S, Y)} Y_M for S ⊂ Delta^M.
struct RelativeRestriction {
    int level = 0;
    Index source_dim = 0;
    Index fiber_dim = 0;
    Index rank = 0;
    bool surjective() const { return rank == fiber_dim; }
    bool injective() const { return rank == source_dim; }
    bool bijective() const { return surjective() && injective(); }
};

RelativeRestriction relative_restriction(const SimpLinMap& f, const SimplicialShape& s);
// The same restriction as a matrix in a basis of the fiber product.
RatMatrix relative_restriction_matrix(const SimpLinMap& f, const SimplicialShape& s);

struct HornCheck {
    int m = 0;
    int j = 0;
    RelativeRestriction restriction;
    bool unique_required = false;
    bool pass() const { return restriction.surjective() && (!unique_required || restriction.bijective()); }
};

struct LieReport {
    int n = 0;
    std::vector<HornCheck> horns;
    bool pass() const;
    std::optional<HornCheck> first_failure() const;
};

LieReport check_lie_n_groupoid(const LinSimpSpace& x, int n);

// q_m = ((d_0, ..., d_m), f_m) into Hom(∂Δ^m, X) ×_{Hom(∂Δ^m, Y)} Y_m.
RatMatrix matching_map(const SimpLinMap& f, int m);

struct MatchingCheck {
    int m = 0;
    RelativeRestriction restriction;
    bool bijective_required = false;
    bool pass() const { return restriction.surjective() && (!bijective_required || restriction.bijective()); }
};

// pass() decides levels m <= n; levels above n are a consistency check
// (bijective automatically when both sides are Lie n-groupoids).
struct HypercoverReport {
    int n = 0;
    std::vector<MatchingCheck> levels;
    bool pass() const;
    bool consistent() const;
    std::optional<MatchingCheck> first_failure() const;
};

HypercoverReport check_hypercover(const SimpLinMap& f, int n);

// `unique_from`: horn fillers must be unique for m >= unique_from (no
// uniqueness requirement when unset).
struct FibrationReport {
    std::optional<int> unique_from;
    std::vector<HornCheck> horns;
    bool pass() const;
    std::optional<HornCheck> first_failure() const;
};

FibrationReport check_kan_fibration(const SimpLinMap& f, std::optional<int> unique_from = std::nullopt);

// Surjections [n] ->> [k] in the order used for Dold-Kan summands: k ascending, then lexicographic.
std::vector<std::vector<int>> dold_kan_summands(int n);

LinSimpSpace dold_kan(const ChainComplexQ& c, int levels);
// Induced simplicial map of a chain map between complexes in degrees 0..top.
SimpLinMap dold_kan_map(const ChainComplexQ& c, const ChainComplexQ& d, const std::vector<RatMatrix>& f, int levels);

// Moore complex N_k = ∩_{i<k} ker d_i with differential (-1)^k d_k, degrees 0..top.
struct MooreComplex {
    ChainComplexQ complex;
    std::vector<Subspace<Rational>> inclusions;
};
MooreComplex normalize(const LinSimpSpace& x, int top);

struct FiberProduct {
    LinSimpSpace space;
    SimpLinMap to_first;   // U -> V
    SimpLinMap to_second;  // U -> Z
};

// V ×_X Z for f : V -> X and g : Z -> X.
FiberProduct fiber_product(const SimpLinMap& f, const SimpLinMap& g);

// Builds a simplicial space on subspaces W_m ⊂ A_m of an ambient tower, given
// the ambient structure matrices (which must preserve the subspaces).
LinSimpSpace simplicial_subspace(const std::vector<Subspace<Rational>>& sub,
                                 const std::function<RatMatrix(int, int)>& ambient_face,
                                 const std::function<RatMatrix(int, int)>& ambient_degen);

// Bisimplicial vector space: Z(i, j) with vertical structure maps (first index)
// and horizontal ones (second index).
class BisimplicialSpace {
  public:
    struct Tables {
        std::vector<std::vector<Index>> dims;                    // [i][j]
        std::vector<std::vector<std::vector<RatMatrix>>> vface;  // [i][j][p] : Z(i,j) -> Z(i-1,j)
        std::vector<std::vector<std::vector<RatMatrix>>> vdegen; // [i][j][p] : Z(i,j) -> Z(i+1,j)
        std::vector<std::vector<std::vector<RatMatrix>>> hface;  // [i][j][q] : Z(i,j) -> Z(i,j-1)
        std::vector<std::vector<std::vector<RatMatrix>>> hdegen; // [i][j][q] : Z(i,j) -> Z(i,j+1)
    };

    BisimplicialSpace() = default;
    explicit BisimplicialSpace(Tables t);

    int rows() const { return static_cast<int>(t_->dims.size()) - 1; }
    int cols() const { return static_cast<int>(t_->dims.front().size()) - 1; }
    Index dim(int i, int j) const { return t_->dims.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)); }
    const RatMatrix& vface(int i, int j, int p) const;
    const RatMatrix& vdegen(int i, int j, int p) const;
    const RatMatrix& hface(int i, int j, int q) const;
    const RatMatrix& hdegen(int i, int j, int q) const;

    LinSimpSpace row(int i) const;     // j ↦ Z(i, j)
    LinSimpSpace column(int j) const;  // i ↦ Z(i, j)
    LinSimpSpace diagonal() const;     // n ↦ Z(n, n) with d_t = vface ∘ hface

    ValidationReport validate() const;

  private:
    std::shared_ptr<const Tables> t_;
};

// Z(i, j) = N_i(X_j / Y_j), the (i+1)-fold fiber power; rows 0..rows.
struct CechNerve {
    BisimplicialSpace space;
    std::vector<std::vector<Subspace<Rational>>> inclusions;  // Z(i,j) ⊂ X_j^{i+1}
};
CechNerve cech_nerve(const SimpLinMap& f, int rows);

// The Čech nerve of one linear surjection, as a simplicial space on levels 0..levels.
CechNerve cech_nerve(const RatMatrix& f, int levels);

}  // namespace shiftsym
