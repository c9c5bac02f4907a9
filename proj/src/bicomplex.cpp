#include "shiftsym/bicomplex.hpp"

#include <algorithm>

namespace shiftsym {

namespace {

Rational sign(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

Subspace<Rational> full_space(Index n) {
    std::vector<Index> rows(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;
    return Subspace<Rational>::with_unit_rows(RatMatrix::Identity(n, n), std::move(rows));
}

}  // namespace

// Kernel of the stacked pullbacks along `maps` (each into the same space of dim `dim`).
Subspace<Rational> forms_killed_by(const std::vector<RatMatrix>& maps, Index dim, int q, int w) {
    FormSpace space(static_cast<int>(dim), q, w);
    if (maps.empty()) return full_space(space.dim());
    std::vector<RatMatrix> rows;
    for (auto& m : maps) rows.push_back(pullback_matrix(m, q, w));
    return kernel_subspace(vstack(rows, space.dim()));
}

void GradedComplex::add_component(GradeKey key, int degree, Index dim) {
    if (!comps_.emplace(std::move(key), Comp{degree, dim}).second)
        throw InvalidInput("GradedComplex: duplicate component");
}

Index GradedComplex::dim(const GradeKey& key) const {
    auto it = comps_.find(key);
    return it == comps_.end() ? 0 : it->second.dim;
}

int GradedComplex::degree(const GradeKey& key) const {
    auto it = comps_.find(key);
    if (it == comps_.end()) throw InvalidInput("GradedComplex: unknown component");
    return it->second.degree;
}

void GradedComplex::add_block(const GradeKey& from, const GradeKey& to, const RatMatrix& m) {
    if (m.rows() != dim(to) || m.cols() != dim(from) || !has(from) || !has(to))
        throw InvalidInput("GradedComplex: block shape does not match components");
    if (degree(to) != degree(from) + 1) throw InvalidInput("GradedComplex: block does not raise degree by one");
    auto [it, fresh] = blocks_.try_emplace({from, to}, m);
    if (!fresh) it->second += m;
}

std::vector<GradeKey> GradedComplex::in_degree(int n) const {
    std::vector<GradeKey> out;
    for (auto& [k, c] : comps_)
        if (c.degree == n) out.push_back(k);
    return out;
}

Index GradedComplex::total_dim(int n) const {
    Index s = 0;
    for (auto& [k, c] : comps_)
        if (c.degree == n) s += c.dim;
    return s;
}

Index GradedComplex::offset(const GradeKey& key) const {
    int n = degree(key);
    Index s = 0;
    for (auto& [k, c] : comps_) {
        if (k == key) return s;
        if (c.degree == n) s += c.dim;
    }
    return s;
}

int GradedComplex::min_degree() const {
    int m = 0;
    bool first = true;
    for (auto& [k, c] : comps_) {
        m = first ? c.degree : std::min(m, c.degree);
        first = false;
    }
    return m;
}

int GradedComplex::max_degree() const {
    int m = 0;
    bool first = true;
    for (auto& [k, c] : comps_) {
        m = first ? c.degree : std::max(m, c.degree);
        first = false;
    }
    return m;
}

ChainComplexQ GradedComplex::total(int lo, int hi) const {
    std::vector<Index> dims;
    for (int n = lo; n <= hi; ++n) dims.push_back(total_dim(n));
    std::vector<RatMatrix> maps;
    for (int n = lo; n < hi; ++n) maps.push_back(RatMatrix::Zero(total_dim(n + 1), total_dim(n)));
    for (auto& [key, m] : blocks_) {
        int n = degree(key.first);
        if (n < lo || n >= hi) continue;
        maps[static_cast<std::size_t>(n - lo)].block(offset(key.second), offset(key.first), m.rows(), m.cols()) += m;
    }
    return ChainComplexQ(Orientation::Cochain, lo, std::move(dims), std::move(maps));
}

std::map<int, RatMatrix> assemble_map(const GradedComplex& src, const GradedComplex& tgt, const BlockMap& blocks,
                                      int lo, int hi) {
    std::map<int, RatMatrix> out;
    for (int n = lo; n <= hi; ++n) out[n] = RatMatrix::Zero(tgt.total_dim(n), src.total_dim(n));
    for (auto& [key, m] : blocks) {
        if (!src.has(key.first) || !tgt.has(key.second)) throw InvalidInput("assemble_map: unknown component");
        int n = src.degree(key.first);
        if (tgt.degree(key.second) != n) throw InvalidInput("assemble_map: block changes degree");
        if (n < lo || n > hi) continue;
        out[n].block(tgt.offset(key.second), src.offset(key.first), m.rows(), m.cols()) += m;
    }
    return out;
}

RatMatrix restricted_pullback(const RatMatrix& a, const Subspace<Rational>& from, const Subspace<Rational>& to, int q,
                              int w) {
    RatMatrix images = product(pullback_matrix(a, q, w), from.basis());
    auto c = to.checked_coords(images);
    if (!c) throw PreconditionError("pullback leaves the normalized forms");
    return *c;
}

Subspace<Rational> normalized_basis(const LinSimpSpace& x, int p, int q, int w) {
    if (p < 0 || p > x.max_level()) throw InvalidInput("normalized_basis: level out of range");
    std::vector<RatMatrix> degens;
    for (int i = 0; i < p; ++i) degens.push_back(x.degeneracy(p - 1, i));
    return forms_killed_by(degens, x.dim(p), q, w);
}

FormBicomplex::FormBicomplex(LinSimpSpace x, int k, int max_weight, int top, bool normalized, int min_weight)
    : x_(std::move(x)), k_(k), min_w_(min_weight), max_w_(max_weight), top_(top), normalized_(normalized) {
    if (k < 0 || top < 0 || min_weight < 0) throw InvalidInput("FormBicomplex: negative parameter");
    if (x_.max_level() < top - k)
        throw InvalidInput("FormBicomplex: model has levels 0.." + std::to_string(x_.max_level()) + ", need " +
                           std::to_string(top - k));
    for (int w = min_w_; w <= max_w_; ++w) {
        GradedComplex& g = graded_[w];
        for (int p = 0; p + k <= top; ++p)
            for (int q = k; q <= w && p + q <= top; ++q) {
                Subspace<Rational> b = normalized ? normalized_basis(x_, p, q, w)
                                                  : full_space(FormSpace(static_cast<int>(x_.dim(p)), q, w).dim());
                if (b.dim() == 0) continue;
                g.add_component({p, q}, p + q, b.dim());
                bases_.emplace(std::make_tuple(w, p, q), std::move(b));
            }
        for (int p = 0; p + k <= top; ++p)
            for (int q = k; q <= w && p + q < top; ++q) {
                if (!has(w, p, q)) continue;
                const auto& b = basis(w, p, q);
                if (has(w, p + 1, q)) {
                    RatMatrix delta = RatMatrix::Zero(FormSpace(static_cast<int>(x_.dim(p + 1)), q, w).dim(), b.basis().rows());
                    for (int i = 0; i <= p + 1; ++i) delta += sign(i) * pullback_matrix(x_.face(p + 1, i), q, w);
                    auto c = basis(w, p + 1, q).checked_coords(product(delta, b.basis()));
                    if (!c) throw PreconditionError("FormBicomplex: δ leaves the normalized forms");
                    g.add_block({p, q}, {p + 1, q}, *c);
                }
                if (has(w, p, q + 1)) {
                    RatMatrix d = de_rham_matrix(static_cast<int>(x_.dim(p)), q, w);
                    auto c = basis(w, p, q + 1).checked_coords(product(d, b.basis()));
                    if (!c) throw PreconditionError("FormBicomplex: d leaves the normalized forms");
                    g.add_block({p, q}, {p, q + 1}, sign(p) * *c);
                }
            }
    }
}

bool FormBicomplex::has(int w, int p, int q) const { return bases_.count({w, p, q}) != 0; }

const Subspace<Rational>& FormBicomplex::basis(int w, int p, int q) const {
    auto it = bases_.find({w, p, q});
    if (it == bases_.end()) throw InvalidInput("FormBicomplex: no component at this (weight, p, q)");
    return it->second;
}

const GradedComplex& FormBicomplex::graded(int w) const {
    auto it = graded_.find(w);
    if (it == graded_.end()) throw InvalidInput("FormBicomplex: weight out of range");
    return it->second;
}

std::optional<RatVector> FormBicomplex::coords(int w, int p, const PolyForm& f) const {
    int q = f.degree();
    PolyForm part = f.weight_part(w);
    if (!has(w, p, q)) {
        if (part.is_zero()) return RatVector(0);
        return std::nullopt;
    }
    RatVector v = FormSpace(f.dim(), q, w).to_vector(part);
    auto c = basis(w, p, q).checked_coords(v);
    if (!c) return std::nullopt;
    return RatVector(c->col(0));
}

PolyForm FormBicomplex::form(int w, int p, int q, const Eigen::Ref<const RatVector>& c) const {
    FormSpace space(static_cast<int>(x_.dim(p)), q, w);
    if (!has(w, p, q)) {
        if (c.size() != 0) throw InvalidInput("FormBicomplex: coordinates for an empty component");
        return PolyForm(static_cast<int>(x_.dim(p)), q);
    }
    return space.from_vector(product(basis(w, p, q).basis(), RatMatrix(c)).col(0));
}

std::map<int, ChainComplexQ> totals(const FormBicomplex& b) {
    std::map<int, ChainComplexQ> out;
    for (int w = b.min_weight(); w <= b.max_weight(); ++w) out[w] = b.total(w);
    return out;
}

CohomologyReport total_cohomology(const FormBicomplex& b, int lo, int hi) {
    CohomologyReport r;
    for (int n = lo; n <= hi; ++n) {
        r.dims[n] = 0;
        std::vector<RatMatrix> reps;
        for (int w = b.min_weight(); w <= b.max_weight(); ++w) {
            auto h = homology_at(b.total(w), n);
            r.dims[n] += h.dim;
            reps.push_back(h.representatives);
        }
        r.representatives[n] = block_diagonal(reps);
    }
    return r;
}

CohomologyReport truncated_total_cohomology(const LinSimpSpace& x, int k, int n, int max_weight) {
    if (n < 0) throw InvalidInput("truncated_total_cohomology: negative degree");
    if (x.max_level() < n + 1)
        throw InvalidInput("truncated_total_cohomology: insufficient levels (have " + std::to_string(x.max_level()) +
                           ", need " + std::to_string(n + 1) + ")");
    FormBicomplex b(x.truncated(n + 1), k, max_weight, n + 1);
    return total_cohomology(b, n, n);
}

std::map<int, std::map<int, RatMatrix>> pullback_cochain_map(const SimpLinMap& f, const FormBicomplex& on_target,
                                                             const FormBicomplex& on_source) {
    if (on_target.k() != on_source.k() || on_target.top() != on_source.top() ||
        on_target.min_weight() != on_source.min_weight() || on_target.max_weight() != on_source.max_weight())
        throw InvalidInput("pullback_cochain_map: bicomplexes have different truncation data");
    std::map<int, std::map<int, RatMatrix>> out;
    for (int w = on_target.min_weight(); w <= on_target.max_weight(); ++w) {
        const auto& gy = on_target.graded(w);
        const auto& gx = on_source.graded(w);
        BlockMap blocks;
        for (int n = 0; n <= on_target.top(); ++n)
            for (auto& key : gy.in_degree(n)) {
                if (!gx.has(key)) continue;
                int p = key[0], q = key[1];
                blocks[{key, key}] = restricted_pullback(f.level(p), on_target.basis(w, p, q),
                                                         on_source.basis(w, p, q), q, w);
            }
        out[w] = assemble_map(gy, gx, blocks, 0, on_target.top());
    }
    return out;
}

std::vector<DegreeComparison> compare_total(const std::map<int, ChainComplexQ>& src,
                                            const std::map<int, ChainComplexQ>& tgt,
                                            const std::map<int, std::map<int, RatMatrix>>& f, int lo, int hi) {
    std::vector<DegreeComparison> out;
    for (int n = lo; n <= hi; ++n) out.push_back({n, 0, 0, 0});
    for (auto& [w, s] : src) {
        auto it = tgt.find(w);
        if (it == tgt.end()) throw InvalidInput("compare_total: weight missing in target");
        auto per = compare_homology(s, it->second, f.at(w), lo, hi);
        for (std::size_t i = 0; i < per.size(); ++i) {
            out[i].dim_source += per[i].dim_source;
            out[i].dim_target += per[i].dim_target;
            out[i].induced_rank += per[i].induced_rank;
        }
    }
    return out;
}

TripleComplex::TripleComplex(BisimplicialSpace z, int k, int max_weight, int top, int min_weight)
    : z_(std::move(z)), k_(k), min_w_(min_weight), max_w_(max_weight), top_(top) {
    if (k < 0 || top < 0 || min_weight < 0) throw InvalidInput("TripleComplex: negative parameter");
    if (z_.rows() < top - k || z_.cols() < top - k)
        throw InvalidInput("TripleComplex: bisimplicial space too small for total degree " + std::to_string(top));
    for (int w = min_w_; w <= max_w_; ++w) {
        GradedComplex& g = graded_[w];
        for (int r = 0; r + k <= top; ++r)
            for (int p = 0; r + p + k <= top; ++p)
                for (int q = k; q <= w && r + p + q <= top; ++q) {
                    std::vector<RatMatrix> degens;
                    for (int i = 0; i < r; ++i) degens.push_back(z_.vdegen(r - 1, p, i));
                    for (int i = 0; i < p; ++i) degens.push_back(z_.hdegen(r, p - 1, i));
                    auto b = forms_killed_by(degens, z_.dim(r, p), q, w);
                    if (b.dim() == 0) continue;
                    g.add_component({r, p, q}, r + p + q, b.dim());
                    bases_.emplace(std::make_tuple(w, r, p, q), std::move(b));
                }
        for (auto& [key, sub] : bases_) {
            auto [kw, r, p, q] = key;
            if (kw != w || r + p + q >= top) continue;
            const RatMatrix& b = sub.basis();
            auto place = [&](int r2, int p2, int q2, const RatMatrix& m, const Rational& s, const char* what) {
                auto c = basis(w, r2, p2, q2).checked_coords(product(m, b));
                if (!c) throw PreconditionError(std::string("TripleComplex: ") + what + " leaves the normalized forms");
                g.add_block({r, p, q}, {r2, p2, q2}, s * *c);
            };
            if (has(w, r + 1, p, q)) {
                RatMatrix d1 = RatMatrix::Zero(FormSpace(static_cast<int>(z_.dim(r + 1, p)), q, w).dim(), b.rows());
                for (int i = 0; i <= r + 1; ++i) d1 += sign(i) * pullback_matrix(z_.vface(r + 1, p, i), q, w);
                place(r + 1, p, q, d1, 1, "δ₁");
            }
            if (has(w, r, p + 1, q)) {
                RatMatrix d2 = RatMatrix::Zero(FormSpace(static_cast<int>(z_.dim(r, p + 1)), q, w).dim(), b.rows());
                for (int i = 0; i <= p + 1; ++i) d2 += sign(i) * pullback_matrix(z_.hface(r, p + 1, i), q, w);
                place(r, p + 1, q, d2, sign(r), "δ₂");
            }
            if (has(w, r, p, q + 1))
                place(r, p, q + 1, de_rham_matrix(static_cast<int>(z_.dim(r, p)), q, w), sign(r + p), "d");
        }
    }
}

bool TripleComplex::has(int w, int r, int p, int q) const { return bases_.count({w, r, p, q}) != 0; }

const Subspace<Rational>& TripleComplex::basis(int w, int r, int p, int q) const {
    auto it = bases_.find({w, r, p, q});
    if (it == bases_.end()) throw InvalidInput("TripleComplex: no component at this (weight, r, p, q)");
    return it->second;
}

const GradedComplex& TripleComplex::graded(int w) const {
    auto it = graded_.find(w);
    if (it == graded_.end()) throw InvalidInput("TripleComplex: weight out of range");
    return it->second;
}

std::map<int, ChainComplexQ> TripleComplex::totals() const {
    std::map<int, ChainComplexQ> out;
    for (int w = min_w_; w <= max_w_; ++w) out[w] = total(w);
    return out;
}

RatMatrix ez_composite(const BisimplicialSpace& z, int r, int p) {
    int n = r + p;
    if (r < 0 || p < 0 || n > z.rows() || n > z.cols()) throw InvalidInput("ez_composite: bidegree out of range");
    RatMatrix m = RatMatrix::Identity(z.dim(n, n), z.dim(n, n));
    for (int i = n; i > r; --i) m = product(z.vface(i, n, r + 1), m);
    for (int j = n; j > p; --j) m = product(z.hface(r, j, 0), m);
    return m;
}

PolyForm ez_diagonal(const BisimplicialSpace& z, int r, int p, const PolyForm& w) {
    return pullback(ez_composite(z, r, p), w);
}

std::map<int, std::map<int, RatMatrix>> ez_cochain_map(const TripleComplex& t, const FormBicomplex& diagonal) {
    if (t.k() != diagonal.k() || t.top() != diagonal.top() || t.min_weight() != diagonal.min_weight() ||
        t.max_weight() != diagonal.max_weight())
        throw InvalidInput("ez_cochain_map: complexes have different truncation data");
    std::map<int, std::map<int, RatMatrix>> out;
    for (int w = t.min_weight(); w <= t.max_weight(); ++w) {
        const auto& gt = t.graded(w);
        const auto& gd = diagonal.graded(w);
        BlockMap blocks;
        for (int n = 0; n <= t.top(); ++n)
            for (auto& key : gt.in_degree(n)) {
                int r = key[0], p = key[1], q = key[2];
                if (!gd.has({r + p, q})) continue;
                blocks[{key, {r + p, q}}] = restricted_pullback(ez_composite(t.space(), r, p), t.basis(w, r, p, q),
                                                                diagonal.basis(w, r + p, q), q, w);
            }
        out[w] = assemble_map(gt, gd, blocks, 0, t.top());
    }
    return out;
}

std::map<int, std::map<int, RatMatrix>> augmentation_map(const CechNerve& nerve, const SimpLinMap& f,
                                                         const FormBicomplex& on_target, const TripleComplex& t) {
    if (on_target.k() != t.k() || on_target.top() != t.top() || on_target.min_weight() != t.min_weight() ||
        on_target.max_weight() != t.max_weight())
        throw InvalidInput("augmentation_map: complexes have different truncation data");
    std::map<int, std::map<int, RatMatrix>> out;
    for (int w = t.min_weight(); w <= t.max_weight(); ++w) {
        const auto& gy = on_target.graded(w);
        const auto& gt = t.graded(w);
        BlockMap blocks;
        for (int n = 0; n <= t.top(); ++n)
            for (auto& key : gy.in_degree(n)) {
                int p = key[0], q = key[1];
                if (!gt.has({0, p, q})) continue;
                const auto& incl = nerve.inclusions.at(0).at(static_cast<std::size_t>(p)).basis();
                blocks[{key, {0, p, q}}] = restricted_pullback(product(f.level(p), incl), on_target.basis(w, p, q),
                                                               t.basis(w, 0, p, q), q, w);
            }
        out[w] = assemble_map(gy, gt, blocks, 0, t.top());
    }
    return out;
}

bool is_cochain_map(const std::map<int, ChainComplexQ>& src, const std::map<int, ChainComplexQ>& tgt,
                    const std::map<int, std::map<int, RatMatrix>>& f) {
    for (auto& [w, s] : src) {
        auto it = tgt.find(w);
        auto fm = f.find(w);
        if (it == tgt.end() || fm == f.end()) return false;
        // the top degree is truncated on both sides
        for (int n = s.lo(); n < s.hi(); ++n) {
            RatMatrix lhs = product(fm->second.at(n + 1), s.out(n));
            RatMatrix rhs = product(it->second.out(n), fm->second.at(n));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

}  // namespace shiftsym
