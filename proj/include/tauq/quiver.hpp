#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauq/field.hpp"

namespace tauq {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

/// Finite quiver. Vertices and arrows are stored sorted by id, so vertex and
/// arrow indices follow the lexicographic order of their ids.
class Quiver {
public:
    struct ArrowSpec {
        std::string name;
        std::string source;
        std::string target;
    };

    Quiver() = default;
    /// Validates unique ids and declared endpoints; throws ParseError.
    static Quiver make(std::vector<std::string> vertices, std::vector<ArrowSpec> arrows);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::string& vertex_name(int v) const { return vertices_[v]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    std::optional<int> find_vertex(std::string_view name) const;
    std::optional<int> find_arrow(std::string_view name) const;
    int vertex_index(std::string_view name) const;  // throws PreconditionError
    int arrow_index(std::string_view name) const;   // throws PreconditionError

    /// Arrows ending in v (x^-(Q_1)) and starting at v (x^+(Q_1)).
    const std::vector<int>& incoming(int v) const { return in_[v]; }
    const std::vector<int>& outgoing(int v) const { return out_[v]; }
    bool is_source(int v) const { return in_[v].empty(); }
    bool is_sink(int v) const { return out_[v].empty(); }

    /// Connected components of the underlying graph, each sorted, ordered by
    /// smallest vertex.
    std::vector<std::vector<int>> components() const;
    bool is_connected() const { return components().size() <= 1; }
    bool has_oriented_cycle() const;

    friend bool operator==(const Quiver& a, const Quiver& b);

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> in_;
    std::vector<std::vector<int>> out_;
};

/// Path stored in traversal order: arrows[0] is applied first. Written
/// right-to-left as "b.a" for the path a then b. Length 0 is e_source.
struct Path {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    static Path trivial(int v) { return Path{v, v, {}}; }
    static Path of_arrow(const Quiver& q, int a);
    int length() const { return static_cast<int>(arrows.size()); }
    bool passes_through(const Quiver& q, int v) const;  // v is an interior vertex

    /// this * rhs: rhs first, then this. Requires rhs.target == source.
    Path after(const Path& rhs) const;

    friend bool operator==(const Path&, const Path&) = default;
};

/// Length first, then lexicographic on arrow indices in traversal order.
bool path_less(const Path& a, const Path& b);
std::string format_path(const Quiver& q, const Path& p);
/// Parses "b.a" (right-to-left); throws PreconditionError on unknown arrows or
/// non-composable sequences.
Path parse_path(const Quiver& q, std::string_view text);

struct Term {
    Scalar coefficient;
    Path path;
};

/// Uniform relation: nonzero combination of distinct parallel paths of length >= 2.
struct Relation {
    std::vector<Term> terms;
    int source = 0;
    int target = 0;

    bool is_monomial() const { return terms.size() == 1; }
    int min_length() const;
    int max_length() const;
};

std::string format_relation(const Quiver& q, const Field& f, const Relation& r);

/// Quiver with uniform relations over a base field.
class BoundQuiver {
public:
    BoundQuiver() = default;
    /// Validates uniformity, path lengths, distinct terms, connectivity.
    /// Like terms are merged and zero terms dropped first. Throws ParseError.
    static BoundQuiver make(Quiver q, std::vector<Relation> relations, Field field, bool require_connected = true);

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const Field& field() const { return field_; }

    /// Same quiver and relations with coefficients mapped into another field.
    BoundQuiver with_field(Field f) const;
    /// Restriction to a vertex subset closed under the arrows it touches
    /// (typically a connected component).
    BoundQuiver restricted_to(const std::vector<int>& vertices) const;

    friend bool operator==(const BoundQuiver& a, const BoundQuiver& b);

private:
    Quiver quiver_;
    std::vector<Relation> relations_;
    Field field_;
};

struct ParseOptions {
    bool allow_disconnected = false;
};

/// Reads the .bq text format.
BoundQuiver parse_bound_quiver(std::string_view text, ParseOptions options = {});
std::string serialize_bound_quiver(const BoundQuiver& bq);

/// Builds a relation from (coefficient, "b.a") pairs with integer coefficients.
Relation make_relation(const Quiver& q, const Field& f, const std::vector<std::pair<long, std::string>>& terms);

/// All paths from `from` to `to` of length <= max_len, in path_less order.
std::vector<Path> enumerate_paths(const Quiver& q, int from, int to, int max_len);
/// All paths starting at `from` of length <= max_len, in path_less order.
std::vector<Path> paths_from(const Quiver& q, int from, int max_len);

struct SourcesSinks {
    std::vector<int> sources;
    std::vector<int> sinks;
};
SourcesSinks sources_sinks(const Quiver& q);

}  // namespace tauq
