#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tauq/algebra.hpp"
#include "tauq/quiver.hpp"

namespace tauq {

/// Vertex and arrow bijection from one quiver onto another (indices).
struct QuiverMap {
    std::vector<int> vertex;
    std::vector<int> arrow;
};

/// Enumerates quiver isomorphisms q1 -> q2 by backtracking on vertices
/// (degree signatures and arrow multiplicities prune) and then on arrows
/// within each parallel class. Stops early when `visit` returns true; the
/// return value says whether it stopped.
bool for_each_quiver_isomorphism(const Quiver& q1, const Quiver& q2,
                                 const std::function<bool(const QuiverMap&)>& visit);

Path map_path(const QuiverMap& m, const Quiver& target, const Path& p);
Relation map_relation(const QuiverMap& m, const Quiver& target, const Relation& r);

/// True when r reduces to zero in ab.
bool ideal_contains(const AlgebraBasis& ab, const Relation& r);

/// Isomorphism of bound quivers: a quiver isomorphism carrying the ideal of
/// `a` exactly onto the ideal of `b` (no arrow rescaling).
std::optional<QuiverMap> find_isomorphism(const BoundQuiver& a, const BoundQuiver& b);
inline bool are_isomorphic(const BoundQuiver& a, const BoundQuiver& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace tauq
