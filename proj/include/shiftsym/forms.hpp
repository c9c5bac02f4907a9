#pragma once

#include "shiftsym/linmodel.hpp"

#include <map>
#include <memory>

namespace shiftsym {

// x^mono dx_{idx[0]} ∧ ... ∧ dx_{idx[q-1]}
struct FormKey {
    std::vector<int> mono;
    std::vector<int> idx;

    int coefficient_degree() const;
    int weight() const { return coefficient_degree() + static_cast<int>(idx.size()); }
    friend bool operator==(const FormKey&, const FormKey&) = default;
};

// Monomial degree ascending, exponents lexicographically descending, then idx lexicographic.
struct FormKeyLess {
    bool operator()(const FormKey& a, const FormKey& b) const;
};

// Polynomial differential q-form on Q^dim.
class PolyForm {
  public:
    using Terms = std::map<FormKey, Rational, FormKeyLess>;

    PolyForm() = default;
    PolyForm(int dim, int degree) : dim_(dim), degree_(degree) {
        if (dim < 0 || degree < 0) throw InvalidInput("PolyForm: negative dimension or degree");
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Largest term weight (q for the zero form).
    int max_weight() const;

    // Adds c * x^mono dx_idx; idx may be unsorted (sign applied) and repeated (term vanishes).
    void add_term(std::vector<int> mono, std::vector<int> idx, const Rational& c);

    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    PolyForm& operator*=(const Rational& c);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator*(const Rational& c, PolyForm a) { return a *= c; }
    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    // Terms of weight exactly w.
    PolyForm weight_part(int w) const;
    // Gram matrix of the constant part of a 2-form: ω(e_a, e_b).
    RatMatrix constant_gram() const;
    static PolyForm from_gram(const RatMatrix& g);

  private:
    int dim_ = 0;
    int degree_ = 0;
    Terms terms_;
};

// Pullback along the linear map y ↦ A y, A : Q^{A.cols} -> Q^{ω.dim}.
PolyForm pullback(const RatMatrix& a, const PolyForm& w);
PolyForm de_rham_d(const PolyForm& w);
// δω = Σ_i (-1)^i d_i^* ω for ω on X_{p-1}, result on X_p.
PolyForm simplicial_delta(const LinSimpSpace& x, int p, const PolyForm& w);

// Forms on Q^dim of degree q and weight exactly w; basis monomial-major in
// FormKeyLess order.
class FormSpace {
  public:
    FormSpace(int dim, int degree, int weight);

    int ambient_dim() const { return data_->dim; }
    int degree() const { return data_->degree; }
    int weight() const { return data_->weight; }
    Index dim() const { return static_cast<Index>(data_->keys.size()); }
    const FormKey& key(Index i) const { return data_->keys[static_cast<std::size_t>(i)]; }
    std::optional<Index> index(const FormKey& k) const;

    // Coordinates of the weight-w part; throws if other weights are present and `strict`.
    RatVector to_vector(const PolyForm& w, bool strict = true) const;
    PolyForm from_vector(const Eigen::Ref<const RatVector>& v) const;

  private:
    struct Data {
        int dim = 0, degree = 0, weight = 0;
        std::vector<FormKey> keys;
        std::vector<std::vector<int>> monos;
        std::vector<std::vector<int>> tuples;
        std::map<std::vector<int>, Index> mono_index;
        std::map<std::vector<int>, Index> tuple_index;
    };
    std::shared_ptr<const Data> data_;
};

// Matrix of ω ↦ A^*ω from FormSpace(A.rows, q, w) to FormSpace(A.cols, q, w).
RatMatrix pullback_matrix(const RatMatrix& a, int q, int w);
// Matrix of d from FormSpace(dim, q, w) to FormSpace(dim, q + 1, w).
RatMatrix de_rham_matrix(int dim, int q, int w);

}  // namespace shiftsym
