#include "shiftsym/forms.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace shiftsym {

namespace {

using Poly = std::map<std::vector<int>, Rational>;
using Wedge = std::map<std::vector<int>, Rational>;

void accumulate(std::map<std::vector<int>, Rational>& m, const std::vector<int>& k, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = m.try_emplace(k, c);
    if (fresh) return;
    it->second += c;
    if (is_zero(it->second)) m.erase(it);
}

// Expansions of monomials and wedge products under a fixed linear substitution.
class Substitution {
  public:
    explicit Substitution(const RatMatrix& a) : a_(a) {}

    const Poly& monomial(const std::vector<int>& e) {
        if (auto it = monos_.find(e); it != monos_.end()) return it->second;
        Poly out;
        auto first = std::find_if(e.begin(), e.end(), [](int v) { return v > 0; });
        if (first == e.end()) {
            out.emplace(std::vector<int>(static_cast<std::size_t>(a_.cols()), 0), Rational(1));
        } else {
            auto i = static_cast<Index>(first - e.begin());
            std::vector<int> rest = e;
            --rest[static_cast<std::size_t>(i)];
            for (auto& [m, c] : monomial(rest))
                for (Index j = 0; j < a_.cols(); ++j) {
                    if (is_zero(a_(i, j))) continue;
                    auto n = m;
                    ++n[static_cast<std::size_t>(j)];
                    accumulate(out, n, c * a_(i, j));
                }
        }
        return monos_.emplace(e, std::move(out)).first->second;
    }

    // dx_{I} ↦ Σ_J det A[I, J] dy_J
    const Wedge& wedge(const std::vector<int>& idx) {
        if (auto it = wedges_.find(idx); it != wedges_.end()) return it->second;
        Wedge cur{{{}, Rational(1)}};
        for (int i : idx) {
            Wedge next;
            for (auto& [j_set, c] : cur)
                for (Index j = 0; j < a_.cols(); ++j) {
                    if (is_zero(a_(i, j))) continue;
                    auto pos = std::lower_bound(j_set.begin(), j_set.end(), static_cast<int>(j));
                    if (pos != j_set.end() && *pos == j) continue;
                    auto after = j_set.end() - pos;
                    std::vector<int> n = j_set;
                    n.insert(n.begin() + (pos - j_set.begin()), static_cast<int>(j));
                    accumulate(next, n, after % 2 == 0 ? c * a_(i, j) : -(c * a_(i, j)));
                }
            cur = std::move(next);
        }
        return wedges_.emplace(idx, std::move(cur)).first->second;
    }

  private:
    const RatMatrix& a_;
    std::map<std::vector<int>, Poly> monos_;
    std::map<std::vector<int>, Wedge> wedges_;
};

void check_pullback_shape(const RatMatrix& a, int dim) {
    if (a.rows() != dim)
        throw InvalidInput("pullback: matrix has " + std::to_string(a.rows()) + " rows, form lives on dimension " +
                           std::to_string(dim));
}

// Weighted compositions of `total` into `parts`, first exponent descending.
void monomials(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == parts - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = total; e >= 0; --e) {
        cur.push_back(e);
        monomials(parts, total - e, cur, out);
        cur.pop_back();
    }
}

void tuples(int dim, int q, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == q) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < dim; ++i) {
        cur.push_back(i);
        tuples(dim, q, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

int FormKey::coefficient_degree() const { return std::accumulate(mono.begin(), mono.end(), 0); }

bool FormKeyLess::operator()(const FormKey& a, const FormKey& b) const {
    int da = a.coefficient_degree(), db = b.coefficient_degree();
    if (da != db) return da < db;
    if (a.mono != b.mono) return a.mono > b.mono;
    return a.idx < b.idx;
}

int PolyForm::max_weight() const {
    int w = degree_;
    for (auto& [k, c] : terms_) w = std::max(w, k.weight());
    return w;
}

void PolyForm::add_term(std::vector<int> mono, std::vector<int> idx, const Rational& c) {
    if (static_cast<int>(mono.size()) != dim_ || static_cast<int>(idx.size()) != degree_)
        throw InvalidInput("PolyForm: term shape does not match dimension " + std::to_string(dim_) + ", degree " +
                           std::to_string(degree_));
    for (int e : mono)
        if (e < 0) throw InvalidInput("PolyForm: negative exponent");
    for (int i : idx)
        if (i < 0 || i >= dim_) throw InvalidInput("PolyForm: index out of range");
    if (shiftsym::is_zero(c)) return;
    bool odd = false;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return;
            if (idx[i] > idx[j]) odd = !odd;
        }
    std::sort(idx.begin(), idx.end());
    FormKey key{std::move(mono), std::move(idx)};
    Rational v = odd ? Rational(-c) : c;
    auto [it, fresh] = terms_.try_emplace(std::move(key), v);
    if (fresh) return;
    it->second += v;
    if (shiftsym::is_zero(it->second)) terms_.erase(it);
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw InvalidInput("PolyForm: adding forms of different shape");
    for (auto& [k, c] : o.terms_) add_term(k.mono, k.idx, c);
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw InvalidInput("PolyForm: subtracting forms of different shape");
    for (auto& [k, c] : o.terms_) add_term(k.mono, k.idx, -c);
    return *this;
}

PolyForm& PolyForm::operator*=(const Rational& c) {
    if (shiftsym::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

PolyForm PolyForm::weight_part(int w) const {
    PolyForm out(dim_, degree_);
    for (auto& [k, c] : terms_)
        if (k.weight() == w) out.terms_.emplace(k, c);
    return out;
}

RatMatrix PolyForm::constant_gram() const {
    if (degree_ != 2) throw InvalidInput("constant_gram: form degree is not 2");
    RatMatrix g = RatMatrix::Zero(dim_, dim_);
    for (auto& [k, c] : terms_) {
        if (k.coefficient_degree() != 0) continue;
        g(k.idx[0], k.idx[1]) = c;
        g(k.idx[1], k.idx[0]) = -c;
    }
    return g;
}

PolyForm PolyForm::from_gram(const RatMatrix& g) {
    if (g.rows() != g.cols()) throw InvalidInput("from_gram: matrix is not square");
    if (g != RatMatrix(-g.transpose())) throw InvalidInput("from_gram: matrix is not antisymmetric");
    int d = static_cast<int>(g.rows());
    PolyForm out(d, 2);
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) out.add_term(std::vector<int>(static_cast<std::size_t>(d), 0), {a, b}, g(a, b));
    return out;
}

PolyForm pullback(const RatMatrix& a, const PolyForm& w) {
    check_pullback_shape(a, w.dim());
    Substitution sub(a);
    PolyForm out(static_cast<int>(a.cols()), w.degree());
    for (auto& [k, c] : w.terms()) {
        const Wedge& wedge = sub.wedge(k.idx);
        if (wedge.empty()) continue;
        for (auto& [m, pc] : sub.monomial(k.mono))
            for (auto& [j, wc] : wedge) out.add_term(m, j, c * pc * wc);
    }
    return out;
}

PolyForm de_rham_d(const PolyForm& w) {
    PolyForm out(w.dim(), w.degree() + 1);
    for (auto& [k, c] : w.terms())
        for (int i = 0; i < w.dim(); ++i) {
            int e = k.mono[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            auto m = k.mono;
            --m[static_cast<std::size_t>(i)];
            std::vector<int> idx{i};
            idx.insert(idx.end(), k.idx.begin(), k.idx.end());
            out.add_term(std::move(m), std::move(idx), c * e);
        }
    return out;
}

PolyForm simplicial_delta(const LinSimpSpace& x, int p, const PolyForm& w) {
    if (p < 1 || p > x.max_level()) throw InvalidInput("simplicial_delta: level out of range");
    if (w.dim() != x.dim(p - 1)) throw InvalidInput("simplicial_delta: form does not live on level p - 1");
    PolyForm out(static_cast<int>(x.dim(p)), w.degree());
    for (int i = 0; i <= p; ++i) {
        PolyForm t = pullback(x.face(p, i), w);
        if (i % 2 == 0)
            out += t;
        else
            out -= t;
    }
    return out;
}

FormSpace::FormSpace(int dim, int degree, int weight) {
    if (dim < 0 || degree < 0) throw InvalidInput("FormSpace: negative dimension or degree");
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const Data>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{dim, degree, weight}];
    if (!slot) {
        auto d = std::make_shared<Data>();
        d->dim = dim;
        d->degree = degree;
        d->weight = weight;
        if (weight >= degree && degree <= dim) {
            std::vector<int> cur;
            if (dim > 0)
                monomials(dim, weight - degree, cur, d->monos);
            else if (weight == degree)
                d->monos.emplace_back();
            tuples(dim, degree, 0, cur, d->tuples);
        }
        for (std::size_t i = 0; i < d->monos.size(); ++i) d->mono_index.emplace(d->monos[i], static_cast<Index>(i));
        for (std::size_t i = 0; i < d->tuples.size(); ++i) d->tuple_index.emplace(d->tuples[i], static_cast<Index>(i));
        for (auto& m : d->monos)
            for (auto& t : d->tuples) d->keys.push_back({m, t});
        slot = std::move(d);
    }
    data_ = slot;
}

std::optional<Index> FormSpace::index(const FormKey& k) const {
    auto m = data_->mono_index.find(k.mono);
    auto t = data_->tuple_index.find(k.idx);
    if (m == data_->mono_index.end() || t == data_->tuple_index.end()) return std::nullopt;
    return m->second * static_cast<Index>(data_->tuples.size()) + t->second;
}

RatVector FormSpace::to_vector(const PolyForm& w, bool strict) const {
    if (w.dim() != data_->dim || w.degree() != data_->degree)
        throw InvalidInput("FormSpace: form shape does not match the space");
    RatVector v = RatVector::Zero(dim());
    for (auto& [k, c] : w.terms()) {
        auto i = index(k);
        if (i)
            v(*i) = c;
        else if (strict)
            throw InvalidInput("FormSpace: form has a term of weight " + std::to_string(k.weight()) + ", expected " +
                               std::to_string(data_->weight));
    }
    return v;
}

PolyForm FormSpace::from_vector(const Eigen::Ref<const RatVector>& v) const {
    if (v.size() != dim()) throw InvalidInput("FormSpace: coordinate vector has wrong length");
    PolyForm out(data_->dim, data_->degree);
    for (Index i = 0; i < dim(); ++i)
        if (!is_zero(v(i))) out.add_term(key(i).mono, key(i).idx, v(i));
    return out;
}

RatMatrix pullback_matrix(const RatMatrix& a, int q, int w) {
    FormSpace src(static_cast<int>(a.rows()), q, w), tgt(static_cast<int>(a.cols()), q, w);
    RatMatrix out = RatMatrix::Zero(tgt.dim(), src.dim());
    Substitution sub(a);
    for (Index c = 0; c < src.dim(); ++c) {
        const FormKey& k = src.key(c);
        const Wedge& wedge = sub.wedge(k.idx);
        if (wedge.empty()) continue;
        for (auto& [m, pc] : sub.monomial(k.mono))
            for (auto& [j, wc] : wedge) out(*tgt.index({m, j}), c) += pc * wc;
    }
    return out;
}

RatMatrix de_rham_matrix(int dim, int q, int w) {
    FormSpace src(dim, q, w), tgt(dim, q + 1, w);
    RatMatrix out = RatMatrix::Zero(tgt.dim(), src.dim());
    for (Index c = 0; c < src.dim(); ++c) {
        PolyForm e(dim, q);
        e.add_term(src.key(c).mono, src.key(c).idx, 1);
        PolyForm de = de_rham_d(e);
        for (auto& [k, v] : de.terms()) out(*tgt.index(k), c) = v;
    }
    return out;
}

}  // namespace shiftsym
