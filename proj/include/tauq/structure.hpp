#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tauq/algebra.hpp"
#include "tauq/quiver.hpp"

namespace tauq {

/// Vertices that are neither sources nor sinks and through which every
/// length-2 path vanishes in Λ.
struct NodeReport {
    std::vector<int> nodes;
    /// node -> the quadratic paths βα through it (all zero in Λ)
    std::map<int, std::vector<Path>> witnesses;
};

NodeReport find_nodes(const AlgebraBasis& ab);
bool is_node(const AlgebraBasis& ab, int x);

struct ResolutionStep {
    std::string node;
    std::string plus;   // new source, carries the outgoing arrows
    std::string minus;  // new sink, receives the incoming arrows
};

/// Splits node x into x+ and x-. Listed quadratic generators through x and
/// relation terms passing through x are dropped. The result may be
/// disconnected. Throws PreconditionError when x is not a node.
BoundQuiver resolve_node(const BoundQuiver& bq, int x, ResolutionStep* step = nullptr);
BoundQuiver resolve_node(const BoundQuiver& bq, const std::string& x, ResolutionStep* step = nullptr);

struct GlueResult {
    BoundQuiver bound_quiver;
    std::string vertex;
    std::vector<std::string> warnings;
};

/// Identifies source a with sink z and adds βα for every α into z and β out
/// of a. The merged vertex is named `name` or, by default, "<a>_<z>" made
/// unique. Gluing across components is allowed and reported as a warning.
GlueResult glue(const BoundQuiver& bq, int a, int z, std::optional<std::string> name = std::nullopt);
GlueResult glue(const BoundQuiver& bq, const std::string& a, const std::string& z,
                std::optional<std::string> name = std::nullopt);

struct Resolution {
    BoundQuiver bound_quiver;
    std::vector<ResolutionStep> log;
};

/// Resolves the lexicographically smallest node until none is left.
Resolution resolve_all(const BoundQuiver& bq);

/// Renames vertices and arrows; names missing from the maps are kept.
BoundQuiver relabel(const BoundQuiver& bq, const std::map<std::string, std::string>& vertex_names,
                    const std::map<std::string, std::string>& arrow_names);

}  // namespace tauq
