#pragma once

#include "shiftsym/exactla.hpp"

#include <map>
#include <string>

namespace shiftsym {

enum class Orientation { Chain, Cochain };

// Finite complex over a contiguous degree range.  maps[t] connects degrees
// lo+t and lo+t+1: C_{lo+t+1} -> C_{lo+t} for chains, C^{lo+t} -> C^{lo+t+1}
// for cochains.  Outside the range everything is zero.
template <typename Scalar>
class ChainComplex {
  public:
    ChainComplex() = default;
    ChainComplex(Orientation orientation, int lo, std::vector<Index> dims,
                 std::vector<Matrix<Scalar>> maps)
        : orientation_(orientation), lo_(lo), dims_(std::move(dims)), maps_(std::move(maps)) {
        if (dims_.empty() ? !maps_.empty() : maps_.size() + 1 != dims_.size())
            throw InvalidInput("ChainComplex: need one map between each pair of adjacent degrees");
        for (std::size_t t = 0; t < maps_.size(); ++t) {
            Index src = orientation_ == Orientation::Chain ? dims_[t + 1] : dims_[t];
            Index tgt = orientation_ == Orientation::Chain ? dims_[t] : dims_[t + 1];
            if (maps_[t].rows() != tgt || maps_[t].cols() != src)
                throw InvalidInput("ChainComplex: differential shape does not match dims");
        }
    }

    Orientation orientation() const { return orientation_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool in_range(int l) const { return l >= lo_ && l <= hi(); }
    Index dim(int l) const { return in_range(l) ? dims_[static_cast<std::size_t>(l - lo_)] : 0; }

    // Differential leaving degree l.
    Matrix<Scalar> out(int l) const {
        int t = orientation_ == Orientation::Chain ? l - 1 : l;
        if (t < lo_ || t + 1 > hi() || !in_range(l)) {
            int target = orientation_ == Orientation::Chain ? l - 1 : l + 1;
            return Matrix<Scalar>::Zero(dim(target), dim(l));
        }
        return maps_[static_cast<std::size_t>(t - lo_)];
    }

    // Differential arriving at degree l.
    Matrix<Scalar> in(int l) const { return out(orientation_ == Orientation::Chain ? l + 1 : l - 1); }

    // Returns the first degree where d∘d != 0, if any.
    std::optional<int> square_defect() const {
        for (int l = lo_; l <= hi(); ++l)
            if (!is_zero_matrix(product(out(orientation_ == Orientation::Chain ? l - 1 : l + 1) , out(l))))
                return l;
        return std::nullopt;
    }

    void validate() const {
        if (auto l = square_defect())
            throw PreconditionError("complex: d∘d != 0 leaving degree " + std::to_string(*l));
    }

  private:
    Orientation orientation_ = Orientation::Chain;
    int lo_ = 0;
    std::vector<Index> dims_;
    std::vector<Matrix<Scalar>> maps_;
};

using ChainComplexQ = ChainComplex<Rational>;

template <typename Scalar>
struct HomologyGroup {
    int degree = 0;
    Index dim = 0;
    Matrix<Scalar> representatives;  // columns in C_degree
    Matrix<Scalar> boundaries;       // basis of the image arriving at this degree
};

template <typename Scalar>
HomologyGroup<Scalar> homology_at(const ChainComplex<Scalar>& c, int l) {
    HomologyGroup<Scalar> h;
    h.degree = l;
    Matrix<Scalar> cycles = kernel(c.out(l));
    h.boundaries = image(c.in(l));
    h.representatives = complete_basis(h.boundaries, cycles);
    h.dim = h.representatives.cols();
    return h;
}

template <typename Scalar>
std::vector<HomologyGroup<Scalar>> homology(const ChainComplex<Scalar>& c) {
    c.validate();
    std::vector<HomologyGroup<Scalar>> out;
    for (int l = c.lo(); l <= c.hi(); ++l) out.push_back(homology_at(c, l));
    return out;
}

// Matrix of the map H_l(src) -> H_l(tgt) induced by a chain map component
// f_l : src_l -> tgt_l, in the representative bases.
template <typename Scalar>
Matrix<Scalar> induced_on_homology(const HomologyGroup<Scalar>& src, const HomologyGroup<Scalar>& tgt,
                                   const Matrix<Scalar>& f) {
    Matrix<Scalar> images = product(f, src.representatives);
    Index nb = tgt.boundaries.cols();
    Matrix<Scalar> basis(f.rows(), nb + tgt.dim);
    basis << tgt.boundaries, tgt.representatives;
    if (images.cols() == 0) return Matrix<Scalar>(tgt.dim, 0);
    Subspace<Scalar> cycles(basis);
    auto c = cycles.checked_coords(images);
    if (!c) throw PreconditionError("induced map: image of a cycle is not a cycle");
    return c->bottomRows(tgt.dim);
}

// Checks f_{l-1} d = d' f_l (or the cochain analogue) for all degrees.
template <typename Scalar>
bool is_chain_map(const ChainComplex<Scalar>& src, const ChainComplex<Scalar>& tgt,
                  const std::map<int, Matrix<Scalar>>& f) {
    auto comp = [&](int l) -> Matrix<Scalar> {
        auto it = f.find(l);
        if (it != f.end()) return it->second;
        return Matrix<Scalar>::Zero(tgt.dim(l), src.dim(l));
    };
    for (int l = src.lo() - 1; l <= src.hi() + 1; ++l) {
        int next = src.orientation() == Orientation::Chain ? l - 1 : l + 1;
        if (product(comp(next), src.out(l)) != product(tgt.out(l), comp(l))) return false;
    }
    return true;
}

// Degree-indexed (co)homology dimensions with representative bases.
struct CohomologyReport {
    std::map<int, Index> dims;
    std::map<int, RatMatrix> representatives;
};

inline CohomologyReport cohomology_report(const ChainComplexQ& c) {
    CohomologyReport r;
    for (auto& h : homology(c)) {
        r.dims[h.degree] = h.dim;
        r.representatives[h.degree] = h.representatives;
    }
    return r;
}

struct DegreeComparison {
    int degree = 0;
    Index dim_source = 0;
    Index dim_target = 0;
    Index induced_rank = 0;
    bool iso() const { return dim_source == dim_target && induced_rank == dim_source; }
};

// Compares homology of two complexes along a chain map, degree by degree over
// [lo, hi].
template <typename Scalar>
std::vector<DegreeComparison> compare_homology(const ChainComplex<Scalar>& src, const ChainComplex<Scalar>& tgt,
                                               const std::map<int, Matrix<Scalar>>& f, int lo, int hi) {
    std::vector<DegreeComparison> out;
    for (int l = lo; l <= hi; ++l) {
        auto hs = homology_at(src, l);
        auto ht = homology_at(tgt, l);
        DegreeComparison d{l, hs.dim, ht.dim, 0};
        auto it = f.find(l);
        if (it != f.end() && hs.dim > 0 && ht.dim > 0) d.induced_rank = rank(induced_on_homology(hs, ht, it->second));
        out.push_back(d);
    }
    return out;
}

}  // namespace shiftsym
