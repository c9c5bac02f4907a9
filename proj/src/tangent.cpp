#include "shiftsym/tangent.hpp"

#include <algorithm>

namespace shiftsym {

Subspace<Rational> tangent_space(const LinSimpSpace& x, int l) {
    if (l < 0 || l > x.max_level()) throw InvalidInput("tangent_space: level out of range");
    if (l == 0) return Subspace<Rational>::full(x.dim(0));
    // the horn restriction in stacked coordinates has the same kernel as p^l_l
    return kernel_subspace(restriction_from_simplex(horn(l, l), x));
}

TangentComplexData tangent_complex(const LinSimpSpace& x, int n, bool verify_lie) {
    if (n < 0 || n > x.max_level()) throw InvalidInput("tangent_complex: degree out of range");
    if (verify_lie) {
        auto rep = check_lie_n_groupoid(x, n);
        if (!rep.pass()) {
            auto h = *rep.first_failure();
            throw PreconditionError("tangent_complex: not a Lie " + std::to_string(n) + "-groupoid (horn (" +
                                    std::to_string(h.m) + "," + std::to_string(h.j) + ") fails)");
        }
    }
    TangentComplexData t;
    t.n = n;
    t.path = TangentPath::HornKernel;
    std::vector<Index> dims;
    for (int l = 0; l <= n; ++l) {
        t.inclusions.push_back(tangent_space(x, l));
        dims.push_back(t.inclusions.back().dim());
    }
    std::vector<RatMatrix> maps;
    for (int l = 1; l <= n; ++l) {
        auto L = static_cast<std::size_t>(l);
        RatMatrix d = product(x.face(l, l), t.inclusions[L].basis());
        if (l % 2 != 0) d = -d;
        auto c = t.inclusions[L - 1].checked_coords(d);
        if (!c) throw PreconditionError("tangent_complex: last face leaves the tangent space");
        maps.push_back(*c);
    }
    t.complex = ChainComplexQ(Orientation::Chain, 0, std::move(dims), std::move(maps));
    t.complex.validate();
    return t;
}

TangentComplexData tangent_complex_quotient(const LinSimpSpace& x, int n) {
    if (n < 0 || n > x.max_level()) throw InvalidInput("tangent_complex_quotient: degree out of range");
    TangentComplexData t;
    t.n = n;
    t.path = TangentPath::DegeneracyQuotient;
    std::vector<Index> dims;
    for (int l = 0; l <= n; ++l) {
        RatMatrix degenerate(x.dim(l), 0);
        if (l > 0) {
            std::vector<RatMatrix> s;
            for (int i = 0; i < l; ++i) s.push_back(x.degeneracy(l - 1, i));
            degenerate = image(hstack(s, x.dim(l)));
        }
        RatMatrix complement = complete_basis(degenerate, RatMatrix(RatMatrix::Identity(x.dim(l), x.dim(l))));
        t.inclusions.push_back(Subspace<Rational>(hstack<Rational>({degenerate, complement}, x.dim(l))));
        t.degenerate_dims.push_back(degenerate.cols());
        dims.push_back(complement.cols());
    }
    std::vector<RatMatrix> maps;
    for (int l = 1; l <= n; ++l) {
        auto L = static_cast<std::size_t>(l);
        RatMatrix alt = RatMatrix::Zero(x.dim(l - 1), x.dim(l));
        for (int i = 0; i <= l; ++i) alt += (i % 2 == 0 ? Rational(1) : Rational(-1)) * x.face(l, i);
        RatMatrix comp = t.inclusions[L].basis().rightCols(dims[L]);
        RatMatrix c = t.inclusions[L - 1].coords(product(alt, comp));
        maps.push_back(c.bottomRows(dims[L - 1]));
    }
    t.complex = ChainComplexQ(Orientation::Chain, 0, std::move(dims), std::move(maps));
    t.complex.validate();
    return t;
}

std::map<int, RatMatrix> tangent_comparison(const TangentComplexData& k, const TangentComplexData& q) {
    if (k.path != TangentPath::HornKernel || q.path != TangentPath::DegeneracyQuotient || k.n != q.n)
        throw InvalidInput("tangent_comparison: need a horn-kernel and a quotient complex of the same degree");
    std::map<int, RatMatrix> out;
    for (int l = 0; l <= k.n; ++l) {
        auto L = static_cast<std::size_t>(l);
        RatMatrix c = q.inclusions[L].coords(k.inclusions[L].basis());
        out[l] = c.bottomRows(q.complex.dim(l));
    }
    return out;
}

CohomologyReport tangent_homology(const TangentComplexData& t) { return cohomology_report(t.complex); }

std::map<int, RatMatrix> induced_tangent_map(const SimpLinMap& f, const TangentComplexData& s,
                                             const TangentComplexData& t) {
    if (s.path != TangentPath::HornKernel || t.path != TangentPath::HornKernel || s.n != t.n)
        throw InvalidInput("induced_tangent_map: need horn-kernel complexes of the same degree");
    std::map<int, RatMatrix> out;
    for (int l = 0; l <= s.n; ++l) {
        auto L = static_cast<std::size_t>(l);
        auto c = t.inclusions[L].checked_coords(product(f.level(l), s.inclusions[L].basis()));
        if (!c) throw PreconditionError("induced_tangent_map: image leaves the target tangent space at degree " +
                                        std::to_string(l));
        out[l] = *c;
    }
    return out;
}

bool QuasiIsoReport::pass() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const DegreeComparison& d) { return d.iso(); });
}

QuasiIsoReport check_quasi_iso(const SimpLinMap& f, int n, bool verify_lie) {
    auto s = tangent_complex(f.source(), n, verify_lie);
    auto t = tangent_complex(f.target(), n, verify_lie);
    auto m = induced_tangent_map(f, s, t);
    if (!is_chain_map(s.complex, t.complex, m)) throw PreconditionError("check_quasi_iso: induced map is not a chain map");
    return {compare_homology(s.complex, t.complex, m, 0, n)};
}

}  // namespace shiftsym
