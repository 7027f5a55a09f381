#include "tauq/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "tauq/errors.hpp"

namespace tauq {

namespace {

using Signature = std::tuple<std::size_t, std::size_t, int>;

Signature signature(const Quiver& q, int v) {
    int loops = 0;
    for (int a : q.outgoing(v))
        if (q.arrow(a).target == v) ++loops;
    return {q.incoming(v).size(), q.outgoing(v).size(), loops};
}

std::vector<std::vector<int>> multiplicities(const Quiver& q) {
    std::vector<std::vector<int>> m(q.vertex_count(), std::vector<int>(q.vertex_count(), 0));
    for (const auto& a : q.arrows()) ++m[a.source][a.target];
    return m;
}

// Vertex order: BFS over the underlying graph so each vertex after the first
// of its component has an already-mapped neighbour.
std::vector<int> search_order(const Quiver& q) {
    std::vector<int> order;
    std::vector<bool> seen(q.vertex_count(), false);
    for (int s = 0; s < q.vertex_count(); ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            int v = order[head++];
            std::vector<int> nbrs;
            for (int a : q.outgoing(v)) nbrs.push_back(q.arrow(a).target);
            for (int a : q.incoming(v)) nbrs.push_back(q.arrow(a).source);
            for (int w : nbrs)
                if (!seen[w]) {
                    seen[w] = true;
                    order.push_back(w);
                }
        }
    }
    return order;
}

class Matcher {
public:
    Matcher(const Quiver& q1, const Quiver& q2, const std::function<bool(const QuiverMap&)>& visit)
        : q1_(q1), q2_(q2), visit_(visit), m1_(multiplicities(q1)), m2_(multiplicities(q2)), order_(search_order(q1)) {
        map_.vertex.assign(q1.vertex_count(), -1);
        map_.arrow.assign(q1.arrow_count(), -1);
        used_.assign(q2.vertex_count(), false);
        for (int v = 0; v < q1.vertex_count(); ++v) sig1_.push_back(signature(q1, v));
        for (int v = 0; v < q2.vertex_count(); ++v) sig2_.push_back(signature(q2, v));
    }

    bool run() { return assign_vertex(0); }

private:
    bool assign_vertex(std::size_t k) {
        if (k == order_.size()) return assign_arrows();
        int v = order_[k];
        for (int w = 0; w < q2_.vertex_count(); ++w) {
            if (used_[w] || sig1_[v] != sig2_[w]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                int u = order_[j], x = map_.vertex[u];
                ok = m1_[u][v] == m2_[x][w] && m1_[v][u] == m2_[w][x];
            }
            if (!ok) continue;
            map_.vertex[v] = w;
            used_[w] = true;
            if (assign_vertex(k + 1)) return true;
            used_[w] = false;
            map_.vertex[v] = -1;
        }
        return false;
    }

    bool assign_arrows() {
        groups_.clear();
        std::map<std::pair<int, int>, std::size_t> index;
        for (int a = 0; a < q1_.arrow_count(); ++a) {
            auto key = std::make_pair(q1_.arrow(a).source, q1_.arrow(a).target);
            auto [it, fresh] = index.emplace(key, groups_.size());
            if (fresh) {
                Group g;
                int s = map_.vertex[key.first], t = map_.vertex[key.second];
                for (int b = 0; b < q2_.arrow_count(); ++b)
                    if (q2_.arrow(b).source == s && q2_.arrow(b).target == t) g.targets.push_back(b);
                groups_.push_back(std::move(g));
            }
            groups_[it->second].arrows.push_back(a);
        }
        return permute_group(0);
    }

    bool permute_group(std::size_t g) {
        if (g == groups_.size()) return visit_(map_);
        Group& grp = groups_[g];
        std::vector<int> perm = grp.targets;
        std::sort(perm.begin(), perm.end());
        do {
            for (std::size_t i = 0; i < grp.arrows.size(); ++i) map_.arrow[grp.arrows[i]] = perm[i];
            if (permute_group(g + 1)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    struct Group {
        std::vector<int> arrows;
        std::vector<int> targets;
    };

    const Quiver& q1_;
    const Quiver& q2_;
    const std::function<bool(const QuiverMap&)>& visit_;
    std::vector<std::vector<int>> m1_, m2_;
    std::vector<int> order_;
    std::vector<Signature> sig1_, sig2_;
    std::vector<bool> used_;
    std::vector<Group> groups_;
    QuiverMap map_;
};

std::vector<Signature> sorted_signatures(const Quiver& q) {
    std::vector<Signature> s;
    for (int v = 0; v < q.vertex_count(); ++v) s.push_back(signature(q, v));
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

bool for_each_quiver_isomorphism(const Quiver& q1, const Quiver& q2,
                                 const std::function<bool(const QuiverMap&)>& visit) {
    if (q1.vertex_count() != q2.vertex_count() || q1.arrow_count() != q2.arrow_count()) return false;
    if (sorted_signatures(q1) != sorted_signatures(q2)) return false;
    Matcher m(q1, q2, visit);
    return m.run();
}

Path map_path(const QuiverMap& m, const Quiver& target, const Path& p) {
    Path out{m.vertex[p.source], m.vertex[p.target], {}};
    for (int a : p.arrows) out.arrows.push_back(m.arrow[a]);
    (void)target;
    return out;
}

Relation map_relation(const QuiverMap& m, const Quiver& target, const Relation& r) {
    Relation out;
    for (const auto& t : r.terms) out.terms.push_back({t.coefficient, map_path(m, target, t.path)});
    out.source = m.vertex[r.source];
    out.target = m.vertex[r.target];
    return out;
}

bool ideal_contains(const AlgebraBasis& ab, const Relation& r) { return ab.is_zero(ab.reduce(r.terms)); }

std::optional<QuiverMap> find_isomorphism(const BoundQuiver& a, const BoundQuiver& b) {
    if (!(a.field() == b.field())) return std::nullopt;
    AlgebraBasis ab = build_algebra(b);
    std::optional<AlgebraBasis> aa;
    std::optional<QuiverMap> found;
    for_each_quiver_isomorphism(a.quiver(), b.quiver(), [&](const QuiverMap& m) {
        std::vector<Relation> mapped;
        for (const auto& r : a.relations()) {
            Relation mr = map_relation(m, b.quiver(), r);
            if (!ideal_contains(ab, mr)) return false;
            mapped.push_back(std::move(mr));
        }
        // Reverse containment: b's relations vanish in the image of a.
        BoundQuiver image = BoundQuiver::make(b.quiver(), mapped, b.field(), false);
        AlgebraBasis ai = build_algebra(image);
        if (ai.dimension() != ab.dimension()) return false;
        for (const auto& r : b.relations())
            if (!ideal_contains(ai, r)) return false;
        found = m;
        return true;
    });
    return found;
}

}  // namespace tauq
