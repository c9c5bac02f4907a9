#include "shiftsym/generators.hpp"

#include <algorithm>
#include <numeric>

namespace shiftsym {

RatMatrix random_matrix(Rng& rng, Index rows, Index cols, int lo, int hi, double density) {
    std::uniform_int_distribution<int> v(lo, hi);
    std::bernoulli_distribution keep(density);
    RatMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = keep(rng) ? Rational(v(rng)) : Rational(0);
    return m;
}

RatMatrix random_invertible(Rng& rng, Index n) {
    // unit lower times unit upper triangular keeps entries small and is always invertible
    RatMatrix l = RatMatrix::Identity(n, n), u = RatMatrix::Identity(n, n);
    std::uniform_int_distribution<int> v(-1, 1);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < i; ++j) {
            l(i, j) = v(rng);
            u(j, i) = v(rng);
        }
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    RatMatrix p = RatMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1;
    return product(p, product(l, u));
}

ChainComplexQ random_complex(Rng& rng, int top, Index max_dim) {
    std::uniform_int_distribution<Index> dd(0, max_dim);
    std::vector<Index> dims;
    for (int k = 0; k <= top; ++k) dims.push_back(dd(rng));
    std::vector<RatMatrix> maps;
    for (int k = 1; k <= top; ++k) {
        auto K = static_cast<std::size_t>(k);
        RatMatrix cycles = k == 1 ? RatMatrix(RatMatrix::Identity(dims[0], dims[0])) : kernel(maps[K - 2]);
        // low-rank coefficients so homology is usually nonzero
        std::uniform_int_distribution<Index> rr(0, std::min(cycles.cols(), dims[K]));
        Index r = rr(rng);
        RatMatrix coeff = product(random_matrix(rng, cycles.cols(), r), random_matrix(rng, r, dims[K]));
        maps.push_back(product(cycles, coeff));
    }
    return ChainComplexQ(Orientation::Chain, 0, dims, maps);
}

ChainComplexQ random_acyclic(Rng& rng, int top, Index max_pieces) {
    if (top == 0) return ChainComplexQ(Orientation::Chain, 0, {0}, {});
    std::uniform_int_distribution<Index> pp(0, max_pieces);
    std::vector<Index> pieces;
    for (int k = 0; k < top; ++k) pieces.push_back(pp(rng));
    std::vector<Index> dims(static_cast<std::size_t>(top) + 1, 0);
    for (int k = 0; k < top; ++k) {
        dims[static_cast<std::size_t>(k)] += pieces[static_cast<std::size_t>(k)];
        dims[static_cast<std::size_t>(k) + 1] += pieces[static_cast<std::size_t>(k)];
    }
    // degree k holds the tops of the pieces (k, k-1), then the bottoms of the pieces (k+1, k)
    std::vector<RatMatrix> maps;
    for (int k = 1; k <= top; ++k) {
        auto K = static_cast<std::size_t>(k);
        RatMatrix d = RatMatrix::Zero(dims[K - 1], dims[K]);
        Index below_first = k >= 2 ? pieces[K - 2] : 0;  // pieces (k-1, k-2) sit first in degree k-1
        for (Index t = 0; t < pieces[K - 1]; ++t) d(below_first + t, t) = 1;
        maps.push_back(d);
    }
    return ChainComplexQ(Orientation::Chain, 0, dims, maps);
}

ChainComplexQ direct_sum(const ChainComplexQ& c, const ChainComplexQ& d) {
    const int top = std::max(c.hi(), d.hi());
    std::vector<Index> dims;
    for (int k = 0; k <= top; ++k) dims.push_back(c.dim(k) + d.dim(k));
    std::vector<RatMatrix> maps;
    for (int k = 1; k <= top; ++k) maps.push_back(block_diagonal<Rational>({c.out(k), d.out(k)}));
    return ChainComplexQ(Orientation::Chain, 0, dims, maps);
}

ChainIso random_chain_iso(Rng& rng, const ChainComplexQ& c) {
    ChainIso out;
    std::vector<Index> dims;
    for (int k = 0; k <= c.hi(); ++k) {
        out.map.push_back(random_invertible(rng, c.dim(k)));
        dims.push_back(c.dim(k));
    }
    std::vector<RatMatrix> maps;
    for (int k = 1; k <= c.hi(); ++k)
        maps.push_back(product(product(out.map[static_cast<std::size_t>(k) - 1], c.out(k)),
                               inverse(out.map[static_cast<std::size_t>(k)])));
    out.target = ChainComplexQ(Orientation::Chain, 0, dims, maps);
    return out;
}

RandomHypercover random_hypercover_over(Rng& rng, const ChainComplexQ& c, int n, Index max_pieces, int levels) {
    if (c.lo() != 0 || c.hi() > n) throw InvalidInput("random_hypercover: complex must live in degrees 0..n");
    auto d = random_acyclic(rng, n, max_pieces);
    // twist by h = ∂_D k - k ∂_C, an isomorphic copy of C ⊕ D
    std::vector<RatMatrix> k;
    for (int l = 0; l <= n; ++l) k.push_back(random_matrix(rng, d.dim(l), c.dim(l), -1, 1, 0.5));
    std::vector<Index> dims;
    for (int l = 0; l <= n; ++l) dims.push_back(c.dim(l) + d.dim(l));
    std::vector<RatMatrix> maps;
    for (int l = 1; l <= n; ++l) {
        auto L = static_cast<std::size_t>(l);
        RatMatrix h = product(d.out(l), k[L]) - product(k[L - 1], c.out(l));
        RatMatrix z = RatMatrix::Zero(dims[L - 1], dims[L]);
        z.topLeftCorner(c.dim(l - 1), c.dim(l)) = c.out(l);
        z.bottomLeftCorner(d.dim(l - 1), c.dim(l)) = h;
        z.bottomRightCorner(d.dim(l - 1), d.dim(l)) = d.out(l);
        maps.push_back(z);
    }
    ChainComplexQ z(Orientation::Chain, 0, dims, maps);
    auto iso = random_chain_iso(rng, z);
    RandomHypercover out;
    out.n = n;
    out.source_complex = iso.target;
    out.target_complex = c;
    for (int l = 0; l <= n; ++l) {
        RatMatrix proj = RatMatrix::Zero(c.dim(l), dims[static_cast<std::size_t>(l)]);
        proj.leftCols(c.dim(l)) = RatMatrix::Identity(c.dim(l), c.dim(l));
        out.chain_map.push_back(product(proj, inverse(iso.map[static_cast<std::size_t>(l)])));
    }
    out.map = dold_kan_map(out.source_complex, out.target_complex, out.chain_map, levels);
    return out;
}

RandomHypercover random_hypercover(Rng& rng, int n, Index max_dim, int levels) {
    return random_hypercover_over(rng, random_complex(rng, n, max_dim), n, std::max<Index>(1, max_dim / 2), levels);
}

PolyForm random_form(Rng& rng, int dim, int q, int max_weight, int terms) {
    PolyForm out(dim, q);
    if (q > dim || max_weight < q) return out;
    std::uniform_int_distribution<int> wd(q, max_weight), var(0, std::max(dim - 1, 0)), coef(-3, 3);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> mono(static_cast<std::size_t>(dim), 0);
        int w = wd(rng);
        for (int e = q; e < w; ++e) ++mono[static_cast<std::size_t>(var(rng))];
        std::vector<int> idx(static_cast<std::size_t>(dim));
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(static_cast<std::size_t>(q));
        out.add_term(std::move(mono), std::move(idx), coef(rng));
    }
    return out;
}

PolyForm random_normalized_form(Rng& rng, const LinSimpSpace& x, int p, int q, int max_weight) {
    PolyForm out(static_cast<int>(x.dim(p)), q);
    for (int w = q; w <= max_weight; ++w) {
        auto b = normalized_basis(x, p, q, w);
        if (b.dim() == 0) continue;
        RatMatrix c = random_matrix(rng, b.dim(), 1);
        out += FormSpace(static_cast<int>(x.dim(p)), q, w).from_vector(product(b.basis(), c).col(0));
    }
    return out;
}

ShiftedForm random_shifted_form(Rng& rng, const LinSimpSpace& x, int m, int max_weight) {
    std::vector<PolyForm> comps;
    for (int i = 0; i <= m; ++i) comps.push_back(random_normalized_form(rng, x, i, 2 + m - i, max_weight));
    return ShiftedForm(x, m, 2, std::move(comps));
}

ShiftedForm random_multiplicative(Rng& rng, const LinSimpSpace& x, int m) {
    auto b = normalized_basis(x, m, 2, 2);
    RatMatrix delta = RatMatrix::Zero(FormSpace(static_cast<int>(x.dim(m + 1)), 2, 2).dim(), b.ambient_dim());
    for (int i = 0; i <= m + 1; ++i)
        delta += (i % 2 == 0 ? Rational(1) : Rational(-1)) * pullback_matrix(x.face(m + 1, i), 2, 2);
    RatMatrix closed = product(b.basis(), kernel(product(delta, b.basis())));
    RatMatrix c = random_matrix(rng, closed.cols(), 1, -3, 3, 0.8);
    auto top = FormSpace(static_cast<int>(x.dim(m)), 2, 2).from_vector(product(closed, c).col(0));
    auto a = ShiftedForm::zero(x, m, 2);
    std::vector<PolyForm> comps = a.components();
    comps.back() = top;
    return ShiftedForm(x, m, 2, std::move(comps));
}

std::optional<ShiftedForm> random_symplectic(Rng& rng, const LinSimpSpace& x, int m, int n, int attempts) {
    for (int t = 0; t < attempts; ++t) {
        auto a = random_multiplicative(rng, x, m);
        if (check_shifted_symplectic(a, n).pass()) return a;
    }
    return std::nullopt;
}

ShiftedForm standard_symplectic(int d, int levels) {
    RatMatrix g = RatMatrix::Zero(2 * d, 2 * d);
    for (int i = 0; i < d; ++i) {
        g(i, d + i) = 1;
        g(d + i, i) = -1;
    }
    return ShiftedForm(LinSimpSpace::constant(2 * d, levels), 0, 2, {PolyForm::from_gram(g)});
}

LinSimpSpace pair_groupoid_model(Index d, int levels) {
    auto power = [&](int k) { return d * (k + 1); };
    std::vector<Index> dims;
    std::vector<std::vector<RatMatrix>> faces(static_cast<std::size_t>(levels) + 1), degens(faces.size());
    for (int k = 0; k <= levels; ++k) {
        dims.push_back(power(k));
        for (int i = 0; k > 0 && i <= k; ++i) {
            RatMatrix f = RatMatrix::Zero(power(k - 1), power(k));
            for (int t = 0, u = 0; t <= k; ++t)
                if (t != i) f.block(d * u++, d * t, d, d) = RatMatrix::Identity(d, d);
            faces[static_cast<std::size_t>(k)].push_back(f);
        }
        for (int i = 0; k < levels && i <= k; ++i) {
            RatMatrix s = RatMatrix::Zero(power(k + 1), power(k));
            for (int u = 0; u <= k + 1; ++u) s.block(d * u, d * (u <= i ? u : u - 1), d, d) = RatMatrix::Identity(d, d);
            degens[static_cast<std::size_t>(k)].push_back(s);
        }
    }
    return LinSimpSpace(dims, faces, degens);
}

LinSimpSpace two_term_model(const RatMatrix& rho, int levels) {
    return dold_kan(ChainComplexQ(Orientation::Chain, 0, {rho.rows(), rho.cols()}, {rho}), levels);
}

RandomZigZag random_zigzag(Rng& rng, const ChainComplexQ& c, int n, Index max_pieces, int levels) {
    auto hc = random_hypercover_over(rng, c, n, max_pieces, levels);
    auto iso = random_chain_iso(rng, c);
    RandomZigZag out;
    out.x_complex = c;
    out.y_complex = iso.target;
    out.z_complex = hc.source_complex;
    out.g = hc.map;
    const auto& z = hc.source_complex;
    auto chain_map = [&](bool perturb) {
        // T ∘ (g + ∂k + k∂) for a random homotopy k : Z_l -> C_{l+1}
        std::vector<RatMatrix> k;
        for (int l = 0; l <= n; ++l) {
            Index rows = l < n ? c.dim(l + 1) : 0;
            k.push_back(perturb ? random_matrix(rng, rows, z.dim(l), -1, 1, 0.5) : RatMatrix::Zero(rows, z.dim(l)));
        }
        std::vector<RatMatrix> f;
        for (int l = 0; l <= n; ++l) {
            auto L = static_cast<std::size_t>(l);
            RatMatrix g = hc.chain_map[L];
            if (l < n) g += product(c.out(l + 1), k[L]);
            if (l > 0) g += product(k[L - 1], z.out(l));
            f.push_back(L < iso.map.size() ? product(iso.map[L], g) : RatMatrix(0, g.cols()));
        }
        return dold_kan_map(out.z_complex, out.y_complex, f, levels);
    };
    for (int attempt = 0; attempt < 8; ++attempt) {
        out.h = chain_map(true);
        if (check_hypercover(out.h, n).pass()) return out;
    }
    out.h = chain_map(false);
    return out;
}

}  // namespace shiftsym
