#include "shiftsym/coskeleton.hpp"

#include <bit>
#include <map>

namespace shiftsym {

namespace {

SimplicialShape simplex_skeleton(int n, int m) {
    return subshape_of_simplex(n, n, [m](unsigned mask) { return std::popcount(mask) <= m + 1; });
}

struct Level {
    SimplicialShape shape;
    std::vector<SimplicialShape::Simplex> blocks;
    std::vector<Index> offsets;  // into the h part; offsets.back() = size of h
    std::map<std::vector<int>, std::size_t> by_map;
};

Level make_level(const LinSimpSpace& x, int n, int m) {
    Level l;
    l.shape = simplex_skeleton(n, m);
    l.blocks = l.shape.nondegenerate();
    l.offsets.push_back(0);
    for (std::size_t b = 0; b < l.blocks.size(); ++b) {
        const auto& t = l.blocks[b];
        l.offsets.push_back(l.offsets.back() + x.dim(t.level));
        l.by_map[l.shape.vertex_map(t.level, t.index)] = b;
    }
    return l;
}

// Ambient structure map for θ : [n'] -> [n] on stacked coordinates.
RatMatrix ambient_structure(const SimpLinMap& f, const Level& src, const Level& dst, const std::vector<int>& theta,
                            int n) {
    const auto& X = f.source();
    const auto& Y = f.target();
    const int n2 = static_cast<int>(theta.size()) - 1;
    const Index hs = src.offsets.back(), hd = dst.offsets.back();
    RatMatrix out = RatMatrix::Zero(hd + Y.dim(n2), hs + Y.dim(n));
    for (std::size_t b = 0; b < dst.blocks.size(); ++b) {
        const auto& t = dst.blocks[b];
        const auto& v = dst.shape.vertex_map(t.level, t.index);
        std::vector<int> w;
        for (int x : v) w.push_back(theta[static_cast<std::size_t>(x)]);
        std::vector<int> image(w);
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<int> sigma;
        for (int x : w) sigma.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), x) - image.begin()));
        auto a = src.by_map.at(image);
        RatMatrix xs = X.structure_map(sigma, static_cast<int>(image.size()) - 1);
        out.block(dst.offsets[b], src.offsets[a], xs.rows(), xs.cols()) = xs;
    }
    out.bottomRightCorner(Y.dim(n2), Y.dim(n)) = Y.structure_map(theta, n);
    return out;
}

}  // namespace

RelativeCoskeleton relative_coskeleton(const SimpLinMap& f, int m) {
    if (m < -1) throw InvalidInput("relative_coskeleton: m must be >= -1");
    const auto& X = f.source();
    const auto& Y = f.target();
    const int L = f.max_level();
    RelativeCoskeleton out;
    out.m = m;
    std::vector<Level> levels;
    std::vector<RatMatrix> restrict;
    for (int n = 0; n <= L; ++n) {
        levels.push_back(make_level(X, n, m));
        const Level& l = levels.back();
        // relations: shape relations on h, and f on h equals the restriction of y
        HomSpace hx = hom_from_shape(l.shape, X);
        std::vector<RatMatrix> fb;
        for (auto& t : l.blocks) fb.push_back(f.level(t.level));
        RatMatrix fblk = block_diagonal(fb);
        RatMatrix ey = restriction_from_simplex(l.shape, Y);
        const Index h = l.offsets.back();
        RatMatrix sys = RatMatrix::Zero(hx.relations.rows() + fblk.rows(), h + Y.dim(n));
        sys.topLeftCorner(hx.relations.rows(), h) = hx.relations;
        sys.bottomLeftCorner(fblk.rows(), h) = fblk;
        sys.bottomRightCorner(fblk.rows(), Y.dim(n)) = -ey;
        out.inclusions.push_back(kernel_subspace(sys));
        out.stacked_h.push_back(h);
        RatMatrix r(h + Y.dim(n), X.dim(n));
        r.topRows(h) = restriction_from_simplex(l.shape, X);
        r.bottomRows(Y.dim(n)) = f.level(n);
        restrict.push_back(r);
    }
    out.space = simplicial_subspace(
        out.inclusions,
        [&](int n, int i) {
            std::vector<int> delta;
            for (int t = 0; t < n; ++t) delta.push_back(t < i ? t : t + 1);
            return ambient_structure(f, levels[static_cast<std::size_t>(n)], levels[static_cast<std::size_t>(n) - 1],
                                     delta, n);
        },
        [&](int n, int i) {
            std::vector<int> sigma;
            for (int t = 0; t <= n + 1; ++t) sigma.push_back(t <= i ? t : t - 1);
            return ambient_structure(f, levels[static_cast<std::size_t>(n)], levels[static_cast<std::size_t>(n) + 1],
                                     sigma, n);
        });
    std::vector<RatMatrix> from, to;
    for (int n = 0; n <= L; ++n) {
        auto N = static_cast<std::size_t>(n);
        auto c = out.inclusions[N].checked_coords(restrict[N]);
        if (!c) throw PreconditionError("relative_coskeleton: restriction leaves the fiber product");
        from.push_back(*c);
        to.push_back(out.inclusions[N].basis().bottomRows(Y.dim(n)));
    }
    out.from_source = SimpLinMap(X, out.space, std::move(from));
    out.to_target = SimpLinMap(out.space, Y, std::move(to));
    return out;
}

SimpLinMap coskeleton_tower_map(const RelativeCoskeleton& upper, const RelativeCoskeleton& lower) {
    if (upper.m != lower.m + 1) throw InvalidInput("coskeleton_tower_map: stages must be adjacent");
    std::vector<RatMatrix> mats;
    for (int n = 0; n <= upper.space.max_level(); ++n) {
        auto N = static_cast<std::size_t>(n);
        const RatMatrix& b = upper.inclusions[N].basis();
        const Index hu = upper.stacked_h[N], hl = lower.stacked_h[N];
        const Index y = b.rows() - hu;
        // the lower h blocks are a prefix of the upper ones
        RatMatrix image(hl + y, b.cols());
        image.topRows(hl) = b.topRows(hl);
        image.bottomRows(y) = b.bottomRows(y);
        auto c = lower.inclusions[N].checked_coords(image);
        if (!c) throw PreconditionError("coskeleton_tower_map: restriction leaves the lower stage");
        mats.push_back(*c);
    }
    return SimpLinMap(upper.space, lower.space, std::move(mats));
}

CoskeletonTower coskeleton_tower(const SimpLinMap& f, int top) {
    CoskeletonTower t;
    for (int m = -1; m <= top; ++m) t.stages.push_back(relative_coskeleton(f, m));
    for (std::size_t s = 0; s + 1 < t.stages.size(); ++s)
        t.maps.push_back(coskeleton_tower_map(t.stages[s + 1], t.stages[s]));
    return t;
}

}  // namespace shiftsym
