#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tauq/algebra.hpp"
#include "tauq/linalg.hpp"
#include "tauq/quiver.hpp"

namespace tauq {

/// Representation of a bound quiver: a vector space per vertex and a
/// d(target) x d(source) matrix per arrow, over the bound quiver's field.
class Representation {
public:
    Representation() = default;
    /// Validates matrix shapes and that every relation acts as zero; throws
    /// PreconditionError otherwise.
    static Representation make(std::shared_ptr<const BoundQuiver> bq, std::vector<int> dims, std::vector<Matrix> maps);
    /// Zero matrices; no relation check needed.
    static Representation zero(std::shared_ptr<const BoundQuiver> bq, std::vector<int> dims);

    const BoundQuiver& bound_quiver() const { return *bq_; }
    std::shared_ptr<const BoundQuiver> bound_quiver_ptr() const { return bq_; }
    const Quiver& quiver() const { return bq_->quiver(); }
    const Field& field() const { return bq_->field(); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int v) const { return dims_[v]; }
    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    const Matrix& map(int arrow) const { return maps_[arrow]; }
    const std::vector<Matrix>& maps() const { return maps_; }

    /// Matrix of a path (product along the path, first arrow rightmost).
    Matrix path_matrix(const Path& p) const;
    bool satisfies_relations() const;

private:
    std::shared_ptr<const BoundQuiver> bq_;
    std::vector<int> dims_;
    std::vector<Matrix> maps_;
};

Representation simple(std::shared_ptr<const BoundQuiver> bq, int x);
Representation direct_sum(const Representation& m, const Representation& n);

/// P_x = Λe_x; the basis at y is basis(x, y) of the algebra.
Representation projective(const AlgebraBasis& ab, int x);

/// Vector of the representation space at one vertex.
struct VertexVector {
    int vertex = 0;
    Vector coords;
};

/// Submodule as one subspace per vertex.
struct Submodule {
    std::vector<RowSpace> spaces;
    int total_dim() const;
};

/// Smallest submodule containing the generators.
Submodule generated_submodule(const Representation& m, const std::vector<VertexVector>& generators);
Representation quotient(const Representation& m, const Submodule& s);
/// M / <w>; w = 0 returns M unchanged.
Representation cyclic_quotient(const Representation& m, const VertexVector& w);

/// A homomorphism: one d_N(x) x d_M(x) matrix per vertex.
using Homomorphism = std::vector<Matrix>;

std::vector<Homomorphism> hom_basis(const Representation& m, const Representation& n);
int hom_dim(const Representation& m, const Representation& n);
/// End(M) = k. Throws PreconditionError on the zero module.
bool is_brick(const Representation& m);

enum class Tri { False, True, Unknown };
std::string to_string(Tri t);

struct IsoOptions {
    std::uint64_t exhaustive_limit = 1000000;
    int random_trials = 2000;
    std::uint64_t seed = 1;
};

/// Searches Hom(M, N) for an invertible element. Exact on bricks and on small
/// or finite-field search spaces; otherwise may return Unknown.
Tri is_isomorphic(const Representation& m, const Representation& n, const IsoOptions& options = {});

struct BrickFamily {
    std::shared_ptr<const BoundQuiver> algebra;
    int e = 0;
    int f = 0;
    int layer = 0;
    Vector u;  // coordinates in basis(e, f)
    Vector v;
    std::vector<Path> basis;  // basis(e, f), for reading u and v
    int ideal_dim = 0;        // dim Je
    std::vector<Scalar> lambdas;
    std::vector<Representation> members;
    std::vector<int> dims;
    std::vector<int> endo_dims;
    bool all_bricks = false;
    bool pairwise_non_isomorphic = false;
    bool verified() const { return all_bricks && pairwise_non_isomorphic; }
};

/// M_λ = Λ'e / <u - λv> with Λ' = Λ / J, J generated by R^{l+1}, Nu, uN, Nv,
/// vN where l is the first layer of fΛe of dimension > 1. Verifies every
/// member. Throws PreconditionError when e_eΛe_e != k or no layer qualifies.
BrickFamily bongartz_family(const AlgebraBasis& ab, int e, int f, const std::vector<Scalar>& lambdas);

}  // namespace tauq
