#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tauq/linalg.hpp"
#include "tauq/quiver.hpp"

namespace tauq {

inline constexpr int kDefaultMaxBound = 64;

/// Element of e_y Λ e_x in normal form: coordinates over the reduced basis
/// paths of the pair (x -> y).
struct Element {
    int source = 0;
    int target = 0;
    Vector coords;
};

/// Λ = kQ/I built exactly. Per ordered vertex pair the paths of length < N
/// are echelonized against the consequence span of the relations, eliminating
/// longer (then lexicographically larger) paths first; the surviving paths
/// form the reduced basis.
class AlgebraBasis {
public:
    /// Throws AdmissibilityError when no N <= max_bound has J^N inside I, or
    /// when admissibility cannot be certified exactly.
    static AlgebraBasis build(const BoundQuiver& bq, int max_bound = kDefaultMaxBound);

    const BoundQuiver& bound_quiver() const { return bq_; }
    const Quiver& quiver() const { return bq_.quiver(); }
    const Field& field() const { return bq_.field(); }

    /// Smallest n such that every path of length n lies in I.
    int nilpotency_bound() const { return n_; }
    int dimension() const;
    int pair_dimension(int x, int y) const { return static_cast<int>(pair(x, y).basis.size()); }
    /// Reduced basis paths of e_y Λ e_x, ascending in path order.
    const std::vector<Path>& basis(int x, int y) const { return pair(x, y).basis; }
    /// Positive arrow weights making every relation homogeneous (the
    /// certificate used for exactness); empty for acyclic quivers.
    const std::vector<mpq_class>& grading() const { return grading_; }

    Element zero(int x, int y) const;
    Element basis_element(int x, int y, std::size_t i) const;
    Element reduce_path(const Path& p) const;
    /// Normal form of a combination of parallel paths; throws PreconditionError
    /// when the paths are not parallel or the combination is empty.
    Element reduce(const std::vector<Term>& combination) const;
    /// a * b (b first). Requires b.target == a.source.
    Element multiply(const Element& a, const Element& b) const;
    Element add(const Element& a, const Element& b) const;
    Element scale(const Element& a, const Scalar& s) const;
    bool is_zero(const Element& e) const { return is_zero_vector(field(), e.coords); }

    /// Indices into basis(x, x) of basis paths of positive length; they span
    /// rad(e_x Λ e_x).
    std::vector<std::size_t> radical_indices(int x) const;
    /// Indices into basis(x, y) of basis paths of positive length.
    std::vector<std::size_t> positive_length_indices(int x, int y) const;

private:
    struct PairData {
        std::vector<Path> basis;
        std::map<std::vector<int>, std::size_t> coord_of;  // basis path -> coordinate
        std::map<std::vector<int>, Vector> normal_form;    // every path of length < N
    };

    const PairData& pair(int x, int y) const { return pairs_[static_cast<std::size_t>(x) * nv_ + y]; }

    BoundQuiver bq_;
    int n_ = 0;
    int nv_ = 0;
    std::vector<PairData> pairs_;
    std::vector<mpq_class> grading_;
};

inline AlgebraBasis build_algebra(const BoundQuiver& bq, int max_bound = kDefaultMaxBound) {
    return AlgebraBasis::build(bq, max_bound);
}

/// Positive arrow weights making every relation homogeneous, if any exist.
std::optional<std::vector<mpq_class>> homogenizing_grading(const BoundQuiver& bq);

/// Dimensions d_i of R^i / R^{i+1} for R the bimodule radical of fΛe; no
/// trailing zeros (empty when fΛe = 0).
struct LayerProfile {
    int f = 0;
    int e = 0;
    std::vector<int> layers;
};

/// Radical filtration R^0 = fΛe ⊇ R^1 ⊇ ... ⊇ R^k = 0 as subspaces of the
/// coordinate space of pair (e -> f).
std::vector<RowSpace> radical_filtration(const AlgebraBasis& ab, int f, int e);
LayerProfile layer_profile(const AlgebraBasis& ab, int f, int e);

struct DistributivityWitness {
    int f = 0;
    int e = 0;
    int layer = 0;
};

struct DistributivityResult {
    bool distributive = true;
    std::optional<DistributivityWitness> witness;
};

/// Every e_y Λ e_x uniserial as a bimodule, i.e. all layers of dimension <= 1.
/// Pairs are scanned with f outer, e inner, in vertex order.
DistributivityResult is_distributive(const AlgebraBasis& ab);

/// e_y Λ e_x cyclic as a left e_yΛe_y-module / right e_xΛe_x-module.
bool is_cyclic_left(const AlgebraBasis& ab, int x, int y);
bool is_cyclic_right(const AlgebraBasis& ab, int x, int y);

struct RelationCount {
    /// (source x, target y) -> r(x, y) = dim e_y I e_x / e_y (JI + IJ) e_x.
    std::map<std::pair<int, int>, int> per_pair;
    int total = 0;
    /// Indices into the relation list forming a minimal generating subset.
    std::vector<std::size_t> minimal_subset;
};

RelationCount minimal_relation_count(const AlgebraBasis& ab);

}  // namespace tauq
