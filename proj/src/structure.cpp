#include "tauq/structure.hpp"

#include <algorithm>
#include <set>

#include "tauq/errors.hpp"

namespace tauq {

namespace {

// Term with the path written as arrow names, so it survives re-indexing.
struct NamedTerm {
    Scalar coefficient;
    std::vector<std::string> arrows;  // traversal order
};

std::vector<std::vector<NamedTerm>> named_relations(const BoundQuiver& bq) {
    std::vector<std::vector<NamedTerm>> out;
    const Quiver& q = bq.quiver();
    for (const auto& r : bq.relations()) {
        std::vector<NamedTerm> terms;
        for (const auto& t : r.terms) {
            NamedTerm nt{t.coefficient, {}};
            for (int a : t.path.arrows) nt.arrows.push_back(q.arrow(a).name);
            terms.push_back(std::move(nt));
        }
        out.push_back(std::move(terms));
    }
    return out;
}

BoundQuiver rebuild(std::vector<std::string> vertices, std::vector<Quiver::ArrowSpec> arrows,
                    const std::vector<std::vector<NamedTerm>>& relations, const Field& field) {
    Quiver q = Quiver::make(std::move(vertices), std::move(arrows));
    std::vector<Relation> rels;
    for (const auto& terms : relations) {
        if (terms.empty()) continue;
        Relation r;
        for (const auto& t : terms) {
            Path p;
            for (std::size_t i = 0; i < t.arrows.size(); ++i) {
                int a = q.arrow_index(t.arrows[i]);
                if (i == 0) p.source = q.arrow(a).source;
                p.arrows.push_back(a);
                p.target = q.arrow(a).target;
            }
            r.terms.push_back({t.coefficient, std::move(p)});
        }
        r.source = r.terms.front().path.source;
        r.target = r.terms.front().path.target;
        rels.push_back(std::move(r));
    }
    return BoundQuiver::make(std::move(q), std::move(rels), field, false);
}

std::string unique_name(std::string base, const std::set<std::string>& taken, const std::string& suffix) {
    if (!taken.count(base)) return base;
    for (int i = 2;; ++i) {
        std::string cand = base + suffix + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

bool same_component(const Quiver& q, int a, int z) {
    for (const auto& c : q.components())
        if (std::binary_search(c.begin(), c.end(), a)) return std::binary_search(c.begin(), c.end(), z);
    return false;
}

}  // namespace

bool is_node(const AlgebraBasis& ab, int x) {
    const Quiver& q = ab.quiver();
    if (q.is_source(x) || q.is_sink(x)) return false;
    for (int a : q.incoming(x))
        for (int b : q.outgoing(x)) {
            Path p = Path::of_arrow(q, b).after(Path::of_arrow(q, a));
            if (!ab.is_zero(ab.reduce_path(p))) return false;
        }
    return true;
}

NodeReport find_nodes(const AlgebraBasis& ab) {
    NodeReport rep;
    const Quiver& q = ab.quiver();
    for (int x = 0; x < q.vertex_count(); ++x) {
        if (!is_node(ab, x)) continue;
        rep.nodes.push_back(x);
        auto& w = rep.witnesses[x];
        for (int a : q.incoming(x))
            for (int b : q.outgoing(x)) w.push_back(Path::of_arrow(q, b).after(Path::of_arrow(q, a)));
        std::sort(w.begin(), w.end(), path_less);
    }
    return rep;
}

BoundQuiver resolve_node(const BoundQuiver& bq, int x, ResolutionStep* step) {
    const Quiver& q = bq.quiver();
    if (x < 0 || x >= q.vertex_count()) throw PreconditionError("resolve: vertex index out of range");
    const std::string& name = q.vertex_name(x);
    if (q.is_source(x)) throw PreconditionError("resolve: '" + name + "' is a source, not a node");
    if (q.is_sink(x)) throw PreconditionError("resolve: '" + name + "' is a sink, not a node");
    {
        AlgebraBasis ab = build_algebra(bq);
        if (!is_node(ab, x))
            throw PreconditionError("resolve: '" + name + "' is not a node (some length-2 path through it survives)");
    }

    std::set<std::string> taken(q.vertices().begin(), q.vertices().end());
    taken.erase(name);
    std::string plus = unique_name(name + "+", taken, "_");
    taken.insert(plus);
    std::string minus = unique_name(name + "-", taken, "_");

    std::vector<std::string> vertices;
    for (int v = 0; v < q.vertex_count(); ++v)
        if (v != x) vertices.push_back(q.vertex_name(v));
    vertices.push_back(plus);
    vertices.push_back(minus);

    std::vector<Quiver::ArrowSpec> arrows;
    for (const auto& a : q.arrows()) {
        std::string s = a.source == x ? plus : q.vertex_name(a.source);
        std::string t = a.target == x ? minus : q.vertex_name(a.target);
        arrows.push_back({a.name, s, t});
    }

    std::vector<std::vector<NamedTerm>> rels;
    auto named = named_relations(bq);
    for (std::size_t i = 0; i < bq.relations().size(); ++i) {
        const Relation& r = bq.relations()[i];
        // listed quadratic generators through x
        if (r.is_monomial() && r.terms[0].path.length() == 2 && r.terms[0].path.passes_through(q, x)) continue;
        std::vector<NamedTerm> kept;
        for (std::size_t j = 0; j < r.terms.size(); ++j)
            if (!r.terms[j].path.passes_through(q, x)) kept.push_back(named[i][j]);
        if (!kept.empty()) rels.push_back(std::move(kept));
    }

    BoundQuiver out = rebuild(std::move(vertices), std::move(arrows), rels, bq.field());
    build_algebra(out);  // re-validate admissibility
    if (step) *step = ResolutionStep{name, plus, minus};
    return out;
}

BoundQuiver resolve_node(const BoundQuiver& bq, const std::string& x, ResolutionStep* step) {
    return resolve_node(bq, bq.quiver().vertex_index(x), step);
}

GlueResult glue(const BoundQuiver& bq, int a, int z, std::optional<std::string> name) {
    const Quiver& q = bq.quiver();
    if (a < 0 || a >= q.vertex_count() || z < 0 || z >= q.vertex_count())
        throw PreconditionError("glue: vertex index out of range");
    const std::string& an = q.vertex_name(a);
    const std::string& zn = q.vertex_name(z);
    if (a == z) throw PreconditionError("glue: source and sink must differ ('" + an + "')");
    if (!q.is_source(a)) throw PreconditionError("glue: '" + an + "' is not a source");
    if (!q.is_sink(z)) throw PreconditionError("glue: '" + zn + "' is not a sink");

    GlueResult res;
    std::set<std::string> taken(q.vertices().begin(), q.vertices().end());
    taken.erase(an);
    taken.erase(zn);
    if (name) {
        if (taken.count(*name)) throw PreconditionError("glue: vertex name '" + *name + "' already in use");
        res.vertex = *name;
    } else {
        res.vertex = unique_name(an + "_" + zn, taken, "_");
    }
    if (!same_component(q, a, z))
        res.warnings.push_back("glue: '" + an + "' and '" + zn + "' lie in different components");

    std::vector<std::string> vertices;
    for (int v = 0; v < q.vertex_count(); ++v)
        if (v != a && v != z) vertices.push_back(q.vertex_name(v));
    vertices.push_back(res.vertex);

    std::vector<Quiver::ArrowSpec> arrows;
    for (const auto& ar : q.arrows()) {
        std::string s = ar.source == a ? res.vertex : q.vertex_name(ar.source);
        std::string t = ar.target == z ? res.vertex : q.vertex_name(ar.target);
        arrows.push_back({ar.name, s, t});
    }

    auto rels = named_relations(bq);
    const Field& f = bq.field();
    for (int in : q.incoming(z))
        for (int out : q.outgoing(a)) rels.push_back({NamedTerm{f.one(), {q.arrow(in).name, q.arrow(out).name}}});

    res.bound_quiver = rebuild(std::move(vertices), std::move(arrows), rels, f);
    return res;
}

GlueResult glue(const BoundQuiver& bq, const std::string& a, const std::string& z, std::optional<std::string> name) {
    return glue(bq, bq.quiver().vertex_index(a), bq.quiver().vertex_index(z), std::move(name));
}

Resolution resolve_all(const BoundQuiver& bq) {
    Resolution res{bq, {}};
    for (;;) {
        AlgebraBasis ab = build_algebra(res.bound_quiver);
        NodeReport nr = find_nodes(ab);
        if (nr.nodes.empty()) break;
        ResolutionStep step;
        res.bound_quiver = resolve_node(res.bound_quiver, nr.nodes.front(), &step);
        res.log.push_back(std::move(step));
    }
    return res;
}

BoundQuiver relabel(const BoundQuiver& bq, const std::map<std::string, std::string>& vertex_names,
                    const std::map<std::string, std::string>& arrow_names) {
    auto vn = [&](const std::string& s) {
        auto it = vertex_names.find(s);
        return it == vertex_names.end() ? s : it->second;
    };
    auto an = [&](const std::string& s) {
        auto it = arrow_names.find(s);
        return it == arrow_names.end() ? s : it->second;
    };
    const Quiver& q = bq.quiver();
    std::vector<std::string> vertices;
    for (const auto& v : q.vertices()) vertices.push_back(vn(v));
    std::vector<Quiver::ArrowSpec> arrows;
    for (const auto& a : q.arrows()) arrows.push_back({an(a.name), vn(q.vertex_name(a.source)), vn(q.vertex_name(a.target))});
    auto rels = named_relations(bq);
    for (auto& r : rels)
        for (auto& t : r)
            for (auto& a : t.arrows) a = an(a);
    return rebuild(std::move(vertices), std::move(arrows), rels, bq.field());
}

}  // namespace tauq
