#pragma once

#include "shiftsym/linmodel.hpp"

namespace shiftsym {

// cosk_m(X/Y)_n = Hom(sk_m Δ^n, X) ×_{Hom(sk_m Δ^n, Y)} Y_n, realized inside
// stacked coordinates [h_τ for nondegenerate τ ∈ sk_m Δ^n, by dim then lex | y].
struct RelativeCoskeleton {
    int m = -1;
    LinSimpSpace space;
    SimpLinMap from_source;  // X -> cosk_m(X/Y)
    SimpLinMap to_target;    // cosk_m(X/Y) -> Y
    std::vector<Subspace<Rational>> inclusions;  // per level, inside the stacked coordinates
    std::vector<Index> stacked_h;                // per level, size of the h part
};

RelativeCoskeleton relative_coskeleton(const SimpLinMap& f, int m);

// The tower map cosk_m(X/Y) -> cosk_{m-1}(X/Y) forgetting the m-dimensional blocks.
SimpLinMap coskeleton_tower_map(const RelativeCoskeleton& upper, const RelativeCoskeleton& lower);

struct CoskeletonTower {
    std::vector<RelativeCoskeleton> stages;  // m = -1, 0, ..., top
    std::vector<SimpLinMap> maps;            // maps[t] : stages[t+1] -> stages[t]
};

CoskeletonTower coskeleton_tower(const SimpLinMap& f, int top);

}  // namespace shiftsym
