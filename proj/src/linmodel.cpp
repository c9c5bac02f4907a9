#include "shiftsym/linmodel.hpp"

#include <algorithm>
#include <functional>

namespace shiftsym {

namespace {

std::string level_tag(int m, int i) {
    return "(" + std::to_string(m) + "," + std::to_string(i) + ")";
}

void check_shape(const RatMatrix& m, Index rows, Index cols, const std::string& what) {
    if (m.rows() != rows || m.cols() != cols)
        throw InvalidInput(what + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

RatMatrix eye(Index n) { return RatMatrix::Identity(n, n); }

}  // namespace

LinSimpSpace::LinSimpSpace(std::vector<Index> dims, std::vector<std::vector<RatMatrix>> faces,
                           std::vector<std::vector<RatMatrix>> degens) {
    const std::size_t levels = dims.size();
    if (levels == 0) throw InvalidInput("model needs at least level 0");
    if (faces.size() != levels || degens.size() != levels)
        throw InvalidInput("model: face/degeneracy tables must cover every level");
    for (auto d : dims)
        if (d < 0) throw InvalidInput("model: negative dimension");
    for (std::size_t m = 0; m < levels; ++m) {
        const int M = static_cast<int>(m);
        if (faces[m].size() != (m == 0 ? 0 : m + 1))
            throw InvalidInput("model: level " + std::to_string(m) + " needs " + std::to_string(m + 1) + " face maps");
        for (std::size_t i = 0; i < faces[m].size(); ++i)
            check_shape(faces[m][i], dims[m - 1], dims[m], "face " + level_tag(M, static_cast<int>(i)));
        if (degens[m].size() != (m + 1 == levels ? 0 : m + 1))
            throw InvalidInput("model: level " + std::to_string(m) + " has wrong number of degeneracy maps");
        for (std::size_t i = 0; i < degens[m].size(); ++i)
            check_shape(degens[m][i], dims[m + 1], dims[m], "degeneracy " + level_tag(M, static_cast<int>(i)));
    }
    data_ = std::make_shared<Data>(Data{std::move(dims), std::move(faces), std::move(degens)});
}

LinSimpSpace LinSimpSpace::constant(Index dim, int levels) {
    if (levels < 0) throw InvalidInput("constant model: negative level count");
    std::vector<Index> dims(static_cast<std::size_t>(levels) + 1, dim);
    std::vector<std::vector<RatMatrix>> faces(dims.size()), degens(dims.size());
    for (int m = 0; m <= levels; ++m) {
        if (m > 0) faces[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m) + 1, eye(dim));
        if (m < levels) degens[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m) + 1, eye(dim));
    }
    return LinSimpSpace(std::move(dims), std::move(faces), std::move(degens));
}

const RatMatrix& LinSimpSpace::face(int level, int i) const {
    if (level < 1 || level > max_level() || i < 0 || i > level)
        throw InvalidInput("face " + level_tag(level, i) + " out of range");
    return data_->faces[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)];
}

const RatMatrix& LinSimpSpace::degeneracy(int level, int i) const {
    if (level < 0 || level >= max_level() || i < 0 || i > level)
        throw InvalidInput("degeneracy " + level_tag(level, i) + " out of range");
    return data_->degens[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)];
}

RatMatrix LinSimpSpace::structure_map(const std::vector<int>& f, int n) const {
    const int k = static_cast<int>(f.size()) - 1;
    if (k < 0 || n < 0 || n > max_level() || k > max_level())
        throw InvalidInput("structure_map: level out of range");
    for (std::size_t t = 0; t < f.size(); ++t)
        if (f[t] < 0 || f[t] > n || (t > 0 && f[t] < f[t - 1]))
            throw InvalidInput("structure_map: map is not monotone into [n]");
    // A missing vertex v factors f through δ^v.
    std::vector<char> hit(static_cast<std::size_t>(n) + 1, 0);
    for (int v : f) hit[static_cast<std::size_t>(v)] = 1;
    for (int v = 0; v <= n; ++v)
        if (!hit[static_cast<std::size_t>(v)]) {
            std::vector<int> g(f);
            for (int& x : g)
                if (x > v) --x;
            return product(structure_map(g, n - 1), face(n, v));
        }
    // Surjective: the first repeated value factors f through σ^t.
    for (int t = 0; t < k; ++t)
        if (f[static_cast<std::size_t>(t)] == f[static_cast<std::size_t>(t) + 1]) {
            std::vector<int> g(f);
            g.erase(g.begin() + t + 1);
            return product(degeneracy(k - 1, t), structure_map(g, n));
        }
    return eye(dim(n));
}

ValidationReport LinSimpSpace::validate() const {
    ValidationReport r;
    const int L = max_level();
    auto where = [](const char* law, int n, int i, int j) {
        return std::string(law) + " at level " + std::to_string(n) + " (i=" + std::to_string(i) +
               ", j=" + std::to_string(j) + ")";
    };
    for (int n = 2; n <= L; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (product(face(n - 1, i), face(n, j)) != product(face(n - 1, j - 1), face(n, i)))
                    r.fail(where("d_i d_j = d_{j-1} d_i", n, i, j));
    for (int n = 0; n + 2 <= L; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (product(degeneracy(n + 1, i), degeneracy(n, j)) !=
                    product(degeneracy(n + 1, j + 1), degeneracy(n, i)))
                    r.fail(where("s_i s_j = s_{j+1} s_i", n, i, j));
    for (int n = 0; n + 1 <= L; ++n)
        for (int j = 0; j <= n; ++j) {
            const RatMatrix& s = degeneracy(n, j);
            if (product(face(n + 1, j), s) != eye(dim(n)) || product(face(n + 1, j + 1), s) != eye(dim(n)))
                r.fail(where("d_j s_j = id = d_{j+1} s_j", n, j, j));
            if (n == 0) continue;
            for (int i = 0; i <= n + 1; ++i) {
                if (i == j || i == j + 1) continue;
                RatMatrix lhs = product(face(n + 1, i), s);
                RatMatrix rhs = i < j ? product(degeneracy(n - 1, j - 1), face(n, i))
                                      : product(degeneracy(n - 1, j), face(n, i - 1));
                if (lhs != rhs) r.fail(where(i < j ? "d_i s_j = s_{j-1} d_i" : "d_i s_j = s_j d_{i-1}", n, i, j));
            }
        }
    return r;
}

LinSimpSpace LinSimpSpace::truncated(int levels) const {
    if (levels < 0 || levels > max_level()) throw InvalidInput("truncated: level out of range");
    auto n = static_cast<std::size_t>(levels) + 1;
    std::vector<Index> dims(data_->dims.begin(), data_->dims.begin() + static_cast<long>(n));
    std::vector<std::vector<RatMatrix>> faces(data_->faces.begin(), data_->faces.begin() + static_cast<long>(n));
    std::vector<std::vector<RatMatrix>> degens(data_->degens.begin(), data_->degens.begin() + static_cast<long>(n));
    degens.back().clear();
    return LinSimpSpace(std::move(dims), std::move(faces), std::move(degens));
}

LinSimpSpace LinSimpSpace::with_face(int level, int i, RatMatrix m) const {
    auto faces = data_->faces;
    faces.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(i)) = std::move(m);
    return LinSimpSpace(data_->dims, std::move(faces), data_->degens);
}

bool operator==(const LinSimpSpace& a, const LinSimpSpace& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->dims == b.data_->dims && a.data_->faces == b.data_->faces && a.data_->degens == b.data_->degens;
}

SimpLinMap::SimpLinMap(LinSimpSpace source, LinSimpSpace target, std::vector<RatMatrix> levels)
    : source_(std::move(source)), target_(std::move(target)), levels_(std::move(levels)) {
    if (source_.max_level() != target_.max_level())
        throw InvalidInput("map: source and target have different level counts");
    if (static_cast<int>(levels_.size()) != source_.max_level() + 1)
        throw InvalidInput("map: need one matrix per level");
    for (int m = 0; m <= max_level(); ++m)
        check_shape(levels_[static_cast<std::size_t>(m)], target_.dim(m), source_.dim(m),
                    "map level " + std::to_string(m));
}

SimpLinMap SimpLinMap::identity(const LinSimpSpace& x) {
    std::vector<RatMatrix> levels;
    for (int m = 0; m <= x.max_level(); ++m) levels.push_back(eye(x.dim(m)));
    return SimpLinMap(x, x, std::move(levels));
}

SimpLinMap SimpLinMap::to_point(const LinSimpSpace& x) {
    std::vector<RatMatrix> levels;
    for (int m = 0; m <= x.max_level(); ++m) levels.push_back(RatMatrix(0, x.dim(m)));
    return SimpLinMap(x, LinSimpSpace::point(x.max_level()), std::move(levels));
}

ValidationReport SimpLinMap::validate() const {
    ValidationReport r;
    for (int m = 1; m <= max_level(); ++m)
        for (int i = 0; i <= m; ++i)
            if (product(target_.face(m, i), level(m)) != product(level(m - 1), source_.face(m, i)))
                r.fail("map does not commute with face " + level_tag(m, i));
    for (int m = 0; m < max_level(); ++m)
        for (int i = 0; i <= m; ++i)
            if (product(target_.degeneracy(m, i), level(m)) != product(level(m + 1), source_.degeneracy(m, i)))
                r.fail("map does not commute with degeneracy " + level_tag(m, i));
    return r;
}

SimpLinMap SimpLinMap::truncated(int levels) const {
    return SimpLinMap(source_.truncated(levels), target_.truncated(levels),
                      std::vector<RatMatrix>(levels_.begin(), levels_.begin() + levels + 1));
}

SimpLinMap compose(const SimpLinMap& g, const SimpLinMap& f) {
    if (!(g.source() == f.target())) throw InvalidInput("compose: middle models differ");
    std::vector<RatMatrix> levels;
    for (int m = 0; m <= f.max_level(); ++m) levels.push_back(product(g.level(m), f.level(m)));
    return SimpLinMap(f.source(), g.target(), std::move(levels));
}

namespace {

struct StackedLayout {
    std::vector<SimplicialShape::Simplex> simplices;
    std::vector<Index> offsets;
};

StackedLayout layout(const SimplicialShape& s, const LinSimpSpace& x) {
    if (s.max_level() > x.max_level())
        throw InvalidInput("shape needs level " + std::to_string(s.max_level()) + " but model stops at " +
                           std::to_string(x.max_level()));
    StackedLayout out;
    out.simplices = s.nondegenerate();
    out.offsets.push_back(0);
    for (auto& t : out.simplices) out.offsets.push_back(out.offsets.back() + x.dim(t.level));
    return out;
}

// Face relations of the shape on stacked coordinates: for each nondegenerate
// x and each face d_i x = s_{...} z (normal form), d_i h_x - S h_z = 0.
RatMatrix shape_relations(const SimplicialShape& s, const LinSimpSpace& x, const StackedLayout& lay) {
    std::vector<std::size_t> position(0);
    auto locate = [&](const SimplicialShape::Simplex& z) {
        for (std::size_t t = 0; t < lay.simplices.size(); ++t)
            if (lay.simplices[t] == z) return t;
        throw PreconditionError("shape relation refers to a missing simplex");
    };
    Index rows = 0;
    for (auto& t : lay.simplices)
        if (t.level > 0) rows += (t.level + 1) * x.dim(t.level - 1);
    RatMatrix rel = RatMatrix::Zero(rows, lay.offsets.back());
    Index r = 0;
    for (std::size_t a = 0; a < lay.simplices.size(); ++a) {
        const auto& t = lay.simplices[a];
        if (t.level == 0) continue;
        for (int i = 0; i <= t.level; ++i) {
            const Index h = x.dim(t.level - 1);
            rel.block(r, lay.offsets[a], h, x.dim(t.level)) = x.face(t.level, i);
            auto nf = s.normal_form(t.level - 1, s.face(t.level, i, t.index));
            RatMatrix lift = eye(x.dim(nf.core.level));
            int lvl = nf.core.level;
            for (int d : nf.degeneracies) lift = product(x.degeneracy(lvl++, d), lift);
            std::size_t b = locate(nf.core);
            rel.block(r, lay.offsets[b], h, x.dim(nf.core.level)) -= lift;
            r += h;
        }
    }
    return rel;
}

RatMatrix stacked_restriction(const SimplicialShape& s, const LinSimpSpace& x, const StackedLayout& lay) {
    auto m = s.ambient_simplex();
    if (!m) throw InvalidInput("restriction needs a sub-shape of a standard simplex");
    RatMatrix out(lay.offsets.back(), x.dim(*m));
    for (std::size_t a = 0; a < lay.simplices.size(); ++a) {
        const auto& t = lay.simplices[a];
        out.middleRows(lay.offsets[a], x.dim(t.level)) = x.structure_map(s.vertex_map(t.level, t.index), *m);
    }
    return out;
}

RatMatrix stacked_map(const SimpLinMap& f, const StackedLayout& lay) {
    std::vector<RatMatrix> blocks;
    for (auto& t : lay.simplices) blocks.push_back(f.level(t.level));
    return block_diagonal(blocks);
}

struct RelativeSystem {
    RatMatrix system;   // on (h, y)
    RatMatrix restrict; // X_M -> (h, y)
};

RelativeSystem relative_system(const SimpLinMap& f, const SimplicialShape& s) {
    auto m = s.ambient_simplex();
    if (!m) throw InvalidInput("relative restriction needs a sub-shape of a standard simplex");
    if (*m > f.max_level()) throw InvalidInput("relative restriction: model has no level " + std::to_string(*m));
    const auto& X = f.source();
    const auto& Y = f.target();
    auto lx = layout(s, X);
    auto ly = layout(s, Y);
    RatMatrix kx = shape_relations(s, X, lx);
    RatMatrix fb = stacked_map(f, lx);
    RatMatrix ey = stacked_restriction(s, Y, ly);
    const Index hx = lx.offsets.back(), ym = Y.dim(*m);
    RelativeSystem out;
    out.system = RatMatrix::Zero(kx.rows() + fb.rows(), hx + ym);
    out.system.topLeftCorner(kx.rows(), hx) = kx;
    out.system.bottomLeftCorner(fb.rows(), hx) = fb;
    out.system.bottomRightCorner(fb.rows(), ym) = -ey;
    out.restrict = RatMatrix(hx + ym, X.dim(*m));
    out.restrict.topRows(hx) = stacked_restriction(s, X, lx);
    out.restrict.bottomRows(ym) = f.level(*m);
    return out;
}

}  // namespace

RatMatrix HomSpace::evaluation(std::size_t t) const {
    const auto& b = solutions.basis();
    return b.middleRows(offsets[t], offsets[t + 1] - offsets[t]);
}

HomSpace hom_from_shape(const SimplicialShape& s, const LinSimpSpace& x) {
    auto lay = layout(s, x);
    HomSpace h;
    h.shape = s;
    h.simplices = lay.simplices;
    h.offsets = lay.offsets;
    h.relations = shape_relations(s, x, lay);
    h.solutions = kernel_subspace(h.relations);
    return h;
}

RatMatrix restriction_from_simplex(const SimplicialShape& s, const LinSimpSpace& x) {
    return stacked_restriction(s, x, layout(s, x));
}

RelativeRestriction relative_restriction(const SimpLinMap& f, const SimplicialShape& s) {
    auto sys = relative_system(f, s);
    RelativeRestriction out;
    out.level = *s.ambient_simplex();
    out.source_dim = f.source().dim(out.level);
    out.fiber_dim = sys.system.cols() - rank(sys.system);
    out.rank = rank(sys.restrict);
    return out;
}

RatMatrix relative_restriction_matrix(const SimpLinMap& f, const SimplicialShape& s) {
    auto sys = relative_system(f, s);
    auto fiber = kernel_subspace(sys.system);
    auto c = fiber.checked_coords(sys.restrict);
    if (!c) throw PreconditionError("restriction does not land in the fiber product (map not simplicial?)");
    return *c;
}

RatMatrix horn_map(const LinSimpSpace& x, int m, int j) {
    if (m > x.max_level()) throw InvalidInput("horn_map: model has no level " + std::to_string(m));
    return relative_restriction_matrix(SimpLinMap::to_point(x), horn(m, j));
}

bool LieReport::pass() const {
    return std::all_of(horns.begin(), horns.end(), [](const HornCheck& h) { return h.pass(); });
}

std::optional<HornCheck> LieReport::first_failure() const {
    for (auto& h : horns)
        if (!h.pass()) return h;
    return std::nullopt;
}

LieReport check_lie_n_groupoid(const LinSimpSpace& x, int n) {
    if (n < 0) throw InvalidInput("check_lie_n_groupoid: n must be >= 0");
    if (x.max_level() < n + 2)
        throw InvalidInput("check_lie_n_groupoid: need levels through " + std::to_string(n + 2) + ", model has " +
                           std::to_string(x.max_level()));
    LieReport rep;
    rep.n = n;
    auto f = SimpLinMap::to_point(x);
    for (int m = 1; m <= x.max_level(); ++m)
        for (int j = 0; j <= m; ++j)
            rep.horns.push_back({m, j, relative_restriction(f, horn(m, j)), m >= n + 1});
    return rep;
}

RatMatrix matching_map(const SimpLinMap& f, int m) {
    if (m < 0 || m > f.max_level()) throw InvalidInput("matching_map: level out of range");
    return relative_restriction_matrix(f, boundary(m, std::max(m, 0)));
}

bool HypercoverReport::pass() const {
    return std::all_of(levels.begin(), levels.end(), [&](const MatchingCheck& c) { return c.m > n || c.pass(); });
}

bool HypercoverReport::consistent() const {
    return std::all_of(levels.begin(), levels.end(), [&](const MatchingCheck& c) { return c.m <= n || c.pass(); });
}

std::optional<MatchingCheck> HypercoverReport::first_failure() const {
    for (auto& c : levels)
        if (c.m <= n && !c.pass()) return c;
    return std::nullopt;
}

HypercoverReport check_hypercover(const SimpLinMap& f, int n) {
    if (n < 0) throw InvalidInput("check_hypercover: n must be >= 0");
    if (f.max_level() < n + 2)
        throw InvalidInput("check_hypercover: need levels through " + std::to_string(n + 2) + ", maps have " +
                           std::to_string(f.max_level()));
    HypercoverReport rep;
    rep.n = n;
    for (int m = 0; m <= f.max_level(); ++m)
        rep.levels.push_back({m, relative_restriction(f, boundary(m, std::max(m, 0))), m >= n});
    return rep;
}

bool FibrationReport::pass() const {
    return std::all_of(horns.begin(), horns.end(), [](const HornCheck& h) { return h.pass(); });
}

std::optional<HornCheck> FibrationReport::first_failure() const {
    for (auto& h : horns)
        if (!h.pass()) return h;
    return std::nullopt;
}

FibrationReport check_kan_fibration(const SimpLinMap& f, std::optional<int> unique_from) {
    if (f.max_level() < 1) throw InvalidInput("check_kan_fibration: need levels through 1");
    FibrationReport rep;
    rep.unique_from = unique_from;
    for (int m = 1; m <= f.max_level(); ++m)
        for (int j = 0; j <= m; ++j)
            rep.horns.push_back({m, j, relative_restriction(f, horn(m, j)), unique_from && m >= *unique_from});
    return rep;
}

std::vector<std::vector<int>> dold_kan_summands(int n) {
    std::vector<std::vector<int>> out;
    for (int k = 0; k <= n; ++k) {
        // monotone surjections [n] ->> [k]: choose which of the n steps increase
        std::vector<int> cur;
        std::function<void()> rec = [&]() {
            if (static_cast<int>(cur.size()) == n + 1) {
                if (cur.back() == k) out.push_back(cur);
                return;
            }
            int last = cur.back();
            for (int v = last; v <= std::min(last + 1, k); ++v) {
                cur.push_back(v);
                rec();
                cur.pop_back();
            }
        };
        cur.push_back(0);
        rec();
    }
    return out;
}

namespace {

struct DKLevel {
    std::vector<std::vector<int>> summands;
    std::vector<Index> offsets;
};

DKLevel dk_level(const ChainComplexQ& c, int n) {
    DKLevel l;
    l.summands = dold_kan_summands(n);
    l.offsets.push_back(0);
    for (auto& e : l.summands) l.offsets.push_back(l.offsets.back() + c.dim(e.back()));
    return l;
}

std::size_t summand_index(const DKLevel& l, const std::vector<int>& e) {
    auto it = std::find(l.summands.begin(), l.summands.end(), e);
    return static_cast<std::size_t>(it - l.summands.begin());
}

// X(θ) : X_n -> X_{n'} for θ : [n'] -> [n] given by values.
RatMatrix dk_structure(const ChainComplexQ& c, const DKLevel& src, const DKLevel& dst, const std::vector<int>& theta) {
    RatMatrix out = RatMatrix::Zero(dst.offsets.back(), src.offsets.back());
    for (std::size_t a = 0; a < src.summands.size(); ++a) {
        const auto& eta = src.summands[a];
        const int k = eta.back();
        std::vector<int> comp;
        for (int t : theta) comp.push_back(eta[static_cast<std::size_t>(t)]);
        std::vector<int> image(comp);
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<int> eta2;
        for (int v : comp)
            eta2.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), v) - image.begin()));
        const Index ck = c.dim(k);
        if (static_cast<int>(image.size()) == k + 1) {
            auto b = summand_index(dst, eta2);
            out.block(dst.offsets[b], src.offsets[a], ck, ck) = eye(ck);
        } else if (static_cast<int>(image.size()) == k && image.back() == k - 1) {
            auto b = summand_index(dst, eta2);
            RatMatrix d = c.out(k);
            if (k % 2 != 0) d = -d;
            out.block(dst.offsets[b], src.offsets[a], c.dim(k - 1), ck) = d;
        }
    }
    return out;
}

}  // namespace

LinSimpSpace dold_kan(const ChainComplexQ& c, int levels) {
    if (c.orientation() != Orientation::Chain) throw InvalidInput("dold_kan: need a chain complex");
    if (c.lo() < 0) throw InvalidInput("dold_kan: complex must live in degrees >= 0");
    if (levels < 0) throw InvalidInput("dold_kan: negative level count");
    c.validate();
    std::vector<DKLevel> lv;
    std::vector<Index> dims;
    for (int n = 0; n <= levels; ++n) {
        lv.push_back(dk_level(c, n));
        dims.push_back(lv.back().offsets.back());
    }
    std::vector<std::vector<RatMatrix>> faces(dims.size()), degens(dims.size());
    for (int n = 0; n <= levels; ++n) {
        auto N = static_cast<std::size_t>(n);
        for (int i = 0; n > 0 && i <= n; ++i) {
            std::vector<int> delta;
            for (int t = 0; t < n; ++t) delta.push_back(t < i ? t : t + 1);
            faces[N].push_back(dk_structure(c, lv[N], lv[N - 1], delta));
        }
        for (int i = 0; n < levels && i <= n; ++i) {
            std::vector<int> sigma;
            for (int t = 0; t <= n + 1; ++t) sigma.push_back(t <= i ? t : t - 1);
            degens[N].push_back(dk_structure(c, lv[N], lv[N + 1], sigma));
        }
    }
    return LinSimpSpace(std::move(dims), std::move(faces), std::move(degens));
}

SimpLinMap dold_kan_map(const ChainComplexQ& c, const ChainComplexQ& d, const std::vector<RatMatrix>& f, int levels) {
    auto X = dold_kan(c, levels);
    auto Y = dold_kan(d, levels);
    auto comp = [&](int k) -> RatMatrix {
        if (k < static_cast<int>(f.size())) return f[static_cast<std::size_t>(k)];
        return RatMatrix::Zero(d.dim(k), c.dim(k));
    };
    std::vector<RatMatrix> mats;
    for (int n = 0; n <= levels; ++n) {
        std::vector<RatMatrix> blocks;
        for (auto& e : dold_kan_summands(n)) blocks.push_back(comp(e.back()));
        mats.push_back(block_diagonal(blocks));
    }
    return SimpLinMap(X, Y, std::move(mats));
}

MooreComplex normalize(const LinSimpSpace& x, int top) {
    if (top < 0 || top > x.max_level()) throw InvalidInput("normalize: degree out of range");
    MooreComplex out;
    std::vector<Index> dims;
    for (int k = 0; k <= top; ++k) {
        if (k == 0) {
            out.inclusions.push_back(Subspace<Rational>::full(x.dim(0)));
        } else {
            std::vector<RatMatrix> faces;
            for (int i = 0; i < k; ++i) faces.push_back(x.face(k, i));
            out.inclusions.push_back(kernel_subspace(vstack(faces, x.dim(k))));
        }
        dims.push_back(out.inclusions.back().dim());
    }
    std::vector<RatMatrix> maps;
    for (int k = 1; k <= top; ++k) {
        RatMatrix d = product(x.face(k, k), out.inclusions[static_cast<std::size_t>(k)].basis());
        if (k % 2 != 0) d = -d;
        auto c = out.inclusions[static_cast<std::size_t>(k) - 1].checked_coords(d);
        if (!c) throw PreconditionError("normalize: last face does not preserve normalized chains");
        maps.push_back(*c);
    }
    out.complex = ChainComplexQ(Orientation::Chain, 0, std::move(dims), std::move(maps));
    return out;
}

LinSimpSpace simplicial_subspace(const std::vector<Subspace<Rational>>& sub,
                                 const std::function<RatMatrix(int, int)>& ambient_face,
                                 const std::function<RatMatrix(int, int)>& ambient_degen) {
    const int L = static_cast<int>(sub.size()) - 1;
    std::vector<Index> dims;
    for (auto& s : sub) dims.push_back(s.dim());
    std::vector<std::vector<RatMatrix>> faces(sub.size()), degens(sub.size());
    for (int m = 0; m <= L; ++m) {
        auto M = static_cast<std::size_t>(m);
        for (int i = 0; m > 0 && i <= m; ++i) {
            auto c = sub[M - 1].checked_coords(product(ambient_face(m, i), sub[M].basis()));
            if (!c) throw PreconditionError("face " + level_tag(m, i) + " leaves the subspace");
            faces[M].push_back(*c);
        }
        for (int i = 0; m < L && i <= m; ++i) {
            auto c = sub[M + 1].checked_coords(product(ambient_degen(m, i), sub[M].basis()));
            if (!c) throw PreconditionError("degeneracy " + level_tag(m, i) + " leaves the subspace");
            degens[M].push_back(*c);
        }
    }
    return LinSimpSpace(std::move(dims), std::move(faces), std::move(degens));
}

FiberProduct fiber_product(const SimpLinMap& f, const SimpLinMap& g) {
    if (!(f.target() == g.target())) throw InvalidInput("fiber_product: maps have different targets");
    const auto& V = f.source();
    const auto& Z = g.source();
    const int L = f.max_level();
    std::vector<Subspace<Rational>> sub;
    for (int m = 0; m <= L; ++m) {
        RatMatrix sys(f.target().dim(m), V.dim(m) + Z.dim(m));
        sys << f.level(m), -g.level(m);
        sub.push_back(kernel_subspace(sys));
    }
    auto U = simplicial_subspace(
        sub, [&](int m, int i) { return block_diagonal<Rational>({V.face(m, i), Z.face(m, i)}); },
        [&](int m, int i) { return block_diagonal<Rational>({V.degeneracy(m, i), Z.degeneracy(m, i)}); });
    std::vector<RatMatrix> p1, p2;
    for (int m = 0; m <= L; ++m) {
        const auto& b = sub[static_cast<std::size_t>(m)].basis();
        p1.push_back(b.topRows(V.dim(m)));
        p2.push_back(b.bottomRows(Z.dim(m)));
    }
    return {U, SimpLinMap(U, V, std::move(p1)), SimpLinMap(U, Z, std::move(p2))};
}

BisimplicialSpace::BisimplicialSpace(Tables t) {
    const std::size_t I = t.dims.size();
    if (I == 0 || t.dims.front().empty()) throw InvalidInput("bisimplicial space needs Z(0,0)");
    const std::size_t J = t.dims.front().size();
    for (auto& row : t.dims)
        if (row.size() != J) throw InvalidInput("bisimplicial space: ragged dims");
    auto need = [&](const auto& tab, bool vertical, bool faces, const char* what) {
        if (tab.size() != I) throw InvalidInput(std::string("bisimplicial space: ") + what + " rows");
        for (std::size_t i = 0; i < I; ++i) {
            if (tab[i].size() != J) throw InvalidInput(std::string("bisimplicial space: ") + what + " cols");
            for (std::size_t j = 0; j < J; ++j) {
                std::size_t level = vertical ? i : j, top = vertical ? I - 1 : J - 1;
                std::size_t count = faces ? (level == 0 ? 0 : level + 1) : (level == top ? 0 : level + 1);
                if (tab[i][j].size() != count) throw InvalidInput(std::string("bisimplicial space: ") + what + " count");
                for (auto& m : tab[i][j]) {
                    std::size_t ti = vertical ? (faces ? i - 1 : i + 1) : i;
                    std::size_t tj = vertical ? j : (faces ? j - 1 : j + 1);
                    check_shape(m, t.dims[ti][tj], t.dims[i][j], std::string("bisimplicial ") + what);
                }
            }
        }
    };
    need(t.vface, true, true, "vertical face");
    need(t.vdegen, true, false, "vertical degeneracy");
    need(t.hface, false, true, "horizontal face");
    need(t.hdegen, false, false, "horizontal degeneracy");
    t_ = std::make_shared<Tables>(std::move(t));
}

const RatMatrix& BisimplicialSpace::vface(int i, int j, int p) const {
    return t_->vface.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(p));
}
const RatMatrix& BisimplicialSpace::vdegen(int i, int j, int p) const {
    return t_->vdegen.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(p));
}
const RatMatrix& BisimplicialSpace::hface(int i, int j, int q) const {
    return t_->hface.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(q));
}
const RatMatrix& BisimplicialSpace::hdegen(int i, int j, int q) const {
    return t_->hdegen.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(q));
}

LinSimpSpace BisimplicialSpace::row(int i) const {
    auto I = static_cast<std::size_t>(i);
    return LinSimpSpace(t_->dims.at(I), t_->hface.at(I), t_->hdegen.at(I));
}

LinSimpSpace BisimplicialSpace::column(int j) const {
    auto J = static_cast<std::size_t>(j);
    std::vector<Index> dims;
    std::vector<std::vector<RatMatrix>> faces, degens;
    for (int i = 0; i <= rows(); ++i) {
        auto I = static_cast<std::size_t>(i);
        dims.push_back(t_->dims[I].at(J));
        faces.push_back(t_->vface[I][J]);
        degens.push_back(t_->vdegen[I][J]);
    }
    return LinSimpSpace(std::move(dims), std::move(faces), std::move(degens));
}

LinSimpSpace BisimplicialSpace::diagonal() const {
    const int L = std::min(rows(), cols());
    std::vector<Index> dims;
    std::vector<std::vector<RatMatrix>> faces(static_cast<std::size_t>(L) + 1), degens(static_cast<std::size_t>(L) + 1);
    for (int n = 0; n <= L; ++n) {
        dims.push_back(dim(n, n));
        for (int t = 0; n > 0 && t <= n; ++t)
            faces[static_cast<std::size_t>(n)].push_back(product(vface(n, n - 1, t), hface(n, n, t)));
        for (int t = 0; n < L && t <= n; ++t)
            degens[static_cast<std::size_t>(n)].push_back(product(vdegen(n, n + 1, t), hdegen(n, n, t)));
    }
    return LinSimpSpace(std::move(dims), std::move(faces), std::move(degens));
}

ValidationReport BisimplicialSpace::validate() const {
    ValidationReport r;
    for (int i = 0; i <= rows(); ++i)
        for (auto& v : row(i).validate().violations) r.fail("row " + std::to_string(i) + ": " + v);
    for (int j = 0; j <= cols(); ++j)
        for (auto& v : column(j).validate().violations) r.fail("column " + std::to_string(j) + ": " + v);
    // Vertical and horizontal operators commute.
    struct Op {
        int di, dj;
        const RatMatrix* m;
    };
    for (int i = 0; i <= rows(); ++i)
        for (int j = 0; j <= cols(); ++j) {
            std::vector<std::pair<int, int>> vs, hs;  // (kind, index): kind 0 face, 1 degeneracy
            for (int p = 0; i > 0 && p <= i; ++p) vs.push_back({0, p});
            for (int p = 0; i < rows() && p <= i; ++p) vs.push_back({1, p});
            for (int q = 0; j > 0 && q <= j; ++q) hs.push_back({0, q});
            for (int q = 0; j < cols() && q <= j; ++q) hs.push_back({1, q});
            for (auto [vk, p] : vs)
                for (auto [hk, q] : hs) {
                    int i2 = vk == 0 ? i - 1 : i + 1, j2 = hk == 0 ? j - 1 : j + 1;
                    const RatMatrix& v_first = vk == 0 ? vface(i, j, p) : vdegen(i, j, p);
                    const RatMatrix& h_after = hk == 0 ? hface(i2, j, q) : hdegen(i2, j, q);
                    const RatMatrix& h_first = hk == 0 ? hface(i, j, q) : hdegen(i, j, q);
                    const RatMatrix& v_after = vk == 0 ? vface(i, j2, p) : vdegen(i, j2, p);
                    if (product(h_after, v_first) != product(v_after, h_first))
                        r.fail("vertical/horizontal operators do not commute at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
                }
        }
    return r;
}

namespace {

// Selection X^{i+1} -> X^{i} dropping block p.
RatMatrix drop_block(Index d, int copies, int p) {
    RatMatrix out = RatMatrix::Zero(d * (copies - 1), d * copies);
    for (int t = 0, u = 0; t < copies; ++t) {
        if (t == p) continue;
        out.block(d * u, d * t, d, d) = eye(d);
        ++u;
    }
    return out;
}

// X^{i+1} -> X^{i+2} repeating block p.
RatMatrix repeat_block(Index d, int copies, int p) {
    RatMatrix out = RatMatrix::Zero(d * (copies + 1), d * copies);
    for (int u = 0; u <= copies; ++u) {
        int t = u <= p ? u : u - 1;
        out.block(d * u, d * t, d, d) = eye(d);
    }
    return out;
}

}  // namespace

CechNerve cech_nerve(const SimpLinMap& f, int rows) {
    if (rows < 0) throw InvalidInput("cech_nerve: negative row count");
    const auto& X = f.source();
    const int J = f.max_level();
    for (int j = 0; j <= J; ++j)
        if (rank(f.level(j)) != f.target().dim(j))
            throw PreconditionError("cech_nerve: f_" + std::to_string(j) + " is not surjective");
    CechNerve out;
    out.inclusions.assign(static_cast<std::size_t>(rows) + 1, {});
    for (int i = 0; i <= rows; ++i)
        for (int j = 0; j <= J; ++j) {
            const Index d = X.dim(j), e = f.target().dim(j);
            RatMatrix sys = RatMatrix::Zero(e * i, d * (i + 1));
            for (int t = 0; t < i; ++t) {
                sys.block(e * t, d * t, e, d) = f.level(j);
                sys.block(e * t, d * (t + 1), e, d) = -f.level(j);
            }
            out.inclusions[static_cast<std::size_t>(i)].push_back(kernel_subspace(sys));
        }
    auto inc = [&](int i, int j) -> const Subspace<Rational>& {
        return out.inclusions[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    auto restrict_to = [&](int ti, int tj, const RatMatrix& ambient, int si, int sj) {
        auto c = inc(ti, tj).checked_coords(product(ambient, inc(si, sj).basis()));
        if (!c) throw PreconditionError("cech_nerve: structure map leaves the fiber power");
        return *c;
    };
    BisimplicialSpace::Tables t;
    auto R = static_cast<std::size_t>(rows) + 1, C = static_cast<std::size_t>(J) + 1;
    t.dims.assign(R, std::vector<Index>(C));
    t.vface.assign(R, std::vector<std::vector<RatMatrix>>(C));
    t.vdegen = t.hface = t.hdegen = t.vface;
    for (int i = 0; i <= rows; ++i)
        for (int j = 0; j <= J; ++j) {
            auto I = static_cast<std::size_t>(i), Jj = static_cast<std::size_t>(j);
            const Index d = X.dim(j);
            t.dims[I][Jj] = inc(i, j).dim();
            for (int p = 0; i > 0 && p <= i; ++p) t.vface[I][Jj].push_back(restrict_to(i - 1, j, drop_block(d, i + 1, p), i, j));
            for (int p = 0; i < rows && p <= i; ++p)
                t.vdegen[I][Jj].push_back(restrict_to(i + 1, j, repeat_block(d, i + 1, p), i, j));
            for (int q = 0; j > 0 && q <= j; ++q) {
                std::vector<RatMatrix> blocks(static_cast<std::size_t>(i) + 1, X.face(j, q));
                t.hface[I][Jj].push_back(restrict_to(i, j - 1, block_diagonal(blocks), i, j));
            }
            for (int q = 0; j < J && q <= j; ++q) {
                std::vector<RatMatrix> blocks(static_cast<std::size_t>(i) + 1, X.degeneracy(j, q));
                t.hdegen[I][Jj].push_back(restrict_to(i, j + 1, block_diagonal(blocks), i, j));
            }
        }
    out.space = BisimplicialSpace(std::move(t));
    return out;
}

CechNerve cech_nerve(const RatMatrix& f, int levels) {
    auto X = LinSimpSpace::constant(f.cols(), 0);
    auto Y = LinSimpSpace::constant(f.rows(), 0);
    return cech_nerve(SimpLinMap(X, Y, {f}), levels);
}

}  // namespace shiftsym
