// Acceptance run: one PASS/FAIL line per criterion.

#include <bit>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "../unit/support.hpp"
#include "tauq/algebra.hpp"
#include "tauq/census.hpp"
#include "tauq/classifier.hpp"
#include "tauq/errors.hpp"
#include "tauq/isomorphism.hpp"
#include "tauq/models.hpp"
#include "tauq/structure.hpp"

using namespace tauq;
using namespace tauq::test;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

struct Instance {
    std::string name;
    BoundQuiver bq;
};

std::vector<Instance> figure_instances() {
    return {{"A(1,1)", model_A(1, 1)}, {"A(2,3)", model_A(2, 3)},   {"B(2,2)", model_B(2, 2)},
            {"B(3,4)", model_B(3, 4)}, {"C(1)", model_C(1)},         {"C(3)", model_C(3)},
            {"D(1,1)", model_D(1, 1)}, {"D(2,2)", model_D(2, 2)},   {"E(1,1,1)", model_E(1, 1, 1)},
            {"E(2,1,3)", model_E(2, 1, 3)}};
}

const std::vector<std::string>& corpus() {
    static const std::vector<std::string> names = {
        "a11",       "a23",       "a2",        "a3",        "a4",        "a5",          "atilde3",
        "b22",       "b22_signed", "b34",      "b44",       "barbell",   "c1",          "c1_renamed",
        "c2",        "c3",        "d11",       "d22",       "e111",      "e213",        "glued_a11",
        "glued_a23", "glued_b22", "glued_c1",  "glued_c2",  "glued_d11", "glued_d22",   "kronecker",
        "kronecker_pendant",      "doubly_glued"};
    return names;
}

bool witness_is_wide(const AlgebraBasis& ab, const DistributivityWitness& w) {
    auto layers = layer_profile(ab, w.f, w.e).layers;
    return w.layer < static_cast<int>(layers.size()) && layers[w.layer] > 1;
}

Outcome ac1() {
    Outcome o;
    int glued = 0;
    for (const auto& [name, bq] : figure_instances()) {
        AlgebraBasis ab = build_algebra(bq);
        DistributivityResult d = is_distributive(ab);
        if (d.distributive || !d.witness || !witness_is_wide(ab, *d.witness)) o.fail(name + ": no valid witness");
        SourcesSinks ss = sources_sinks(bq.quiver());
        if (ss.sources.empty() || ss.sinks.empty()) continue;  // E has neither, nothing to glue
        BoundQuiver g = glue(bq, ss.sources[0], ss.sinks[0]).bound_quiver;
        AlgebraBasis gab = build_algebra(g);
        DistributivityResult gd = is_distributive(gab);
        if (!gd.distributive && (!gd.witness || !witness_is_wide(gab, *gd.witness)))
            o.fail(name + " glued: invalid witness");
        ClassificationResult r = decide_tau(g);
        const Certificates& c = r.certificates;
        bool finite_by_certificate = !c.nodes.empty() || c.relation_count == 3;
        if (!finite_by_certificate || r.tau != Tri::False) o.fail(name + " glued: certificate mismatch");
        ++glued;
    }
    for (int n = 1; n <= 5; ++n)
        if (!is_distributive(build_algebra(linear_A(n))).distributive) o.fail("linear A_" + std::to_string(n));
    if (o.pass) o.detail = "10 non-distributive witnesses, A_1..A_5 distributive, " + std::to_string(glued) + " glued instances";
    return o;
}

Outcome ac2() {
    Outcome o;
    struct Case {
        std::string name;
        BoundQuiver bq;
        int expected;
    };
    std::vector<Case> cases;
    for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 1}}) cases.push_back({"A", model_A(p, q), 0});
    for (auto [p, q] : {std::pair{2, 2}, {3, 4}, {5, 3}}) cases.push_back({"B", model_B(p, q), 1});
    for (int p : {1, 2, 3}) cases.push_back({"C", model_C(p), 1});
    for (auto [p, q] : {std::pair{1, 1}, {2, 2}, {1, 3}}) cases.push_back({"D", model_D(p, q), 2});
    for (auto [p, q, r] : {std::tuple{1, 1, 1}, {2, 1, 3}, {1, 2, 2}}) cases.push_back({"E", model_E(p, q, r), 3});
    for (const auto& c : cases) {
        RelationCount rc = minimal_relation_count(build_algebra(c.bq));
        if (rc.total != c.expected) o.fail(c.name + ": |R| = " + std::to_string(rc.total));
        std::set<std::pair<int, int>> want, got;
        for (const auto& r : c.bq.relations()) want.insert({r.source, r.target});
        for (const auto& [pair, n] : rc.per_pair) {
            if (n > 0) got.insert(pair);
            if (n > 1) o.fail(c.name + ": r(x,y) > 1");
        }
        if (want != got) o.fail(c.name + ": r(x,y) support differs from the ideal");
    }
    if (o.pass) o.detail = std::to_string(cases.size()) + " instances, |R| = 0,1,1,2,3";
    return o;
}

Outcome ac3() {
    Outcome o;
    int recognised = 0, glued = 0;
    for (const auto& n : corpus()) {
        BoundQuiver bq = fixture(n);
        ClassificationResult r = decide_tau(bq);
        if (r.family.family == Family::Unrecognized) continue;
        ++recognised;
        glued += r.family.family == Family::GluedOf;
        const Certificates& c = r.certificates;
        bool infinite = r.tau == Tri::True;
        bool ss = !c.sources.empty() || !c.sinks.empty();
        bool a = !(!c.nodes.empty() || c.relation_count == 3);
        bool b = !(!c.nodes.empty() || c.non_quadratic_monomial);
        if (r.tau == Tri::Unknown) o.fail(n + ": unknown verdict");
        if (!(ss == infinite && infinite == a && a == b)) o.fail(n + ": verdicts disagree");
        if (!c.sink_source_consistent || !c.node_or_three_consistent || !c.node_or_monomial_consistent)
            o.fail(n + ": certificate flags");
    }
    if (recognised < 20) o.fail("only " + std::to_string(recognised) + " recognised instances");
    if (o.pass) o.detail = std::to_string(recognised) + " recognised fixtures (" + std::to_string(glued) + " glued)";
    return o;
}

BoundQuiver random_glued(std::mt19937_64& rng) {
    std::vector<BoundQuiver> pool = {model_A(1, 1), model_A(1, 2), model_B(2, 2), model_C(1),
                                     model_C(2),    model_D(1, 1), linear_A(2),   linear_A(3)};
    int parts = 1 + static_cast<int>(rng() % 3);
    std::vector<BoundQuiver> chosen;
    for (int i = 0; i < parts; ++i) chosen.push_back(pool[rng() % pool.size()]);
    BoundQuiver bq = parts == 1 ? chosen[0] : disjoint_union(chosen);
    int glues = 1 + static_cast<int>(rng() % 3);
    for (int g = 0; g < glues; ++g) {
        SourcesSinks ss = sources_sinks(bq.quiver());
        std::vector<std::pair<int, int>> pairs;
        for (int a : ss.sources)
            for (int z : ss.sinks)
                if (a != z) pairs.push_back({a, z});
        if (pairs.empty()) break;
        auto [a, z] = pairs[rng() % pairs.size()];
        bq = glue(bq, a, z).bound_quiver;
    }
    return shuffle_names(bq, rng);
}

std::set<std::string> node_names(const BoundQuiver& bq) {
    std::set<std::string> out;
    for (int v : find_nodes(build_algebra(bq)).nodes) out.insert(bq.quiver().vertex_name(v));
    return out;
}

Outcome ac4() {
    Outcome o;
    std::mt19937_64 rng(2024);
    const std::vector<std::string> node_free = {"a11", "a23", "b22", "b34", "c1", "c2", "c3", "d11", "d22",
                                                "a3",  "kronecker_pendant", "atilde3", "barbell"};
    int forward = 0, backward = 0, steps = 0;
    while (forward < 50) {
        BoundQuiver bq = shuffle_names(fixture(node_free[rng() % node_free.size()]), rng);
        SourcesSinks ss = sources_sinks(bq.quiver());
        std::vector<std::pair<int, int>> pairs;
        for (int a : ss.sources)
            for (int z : ss.sinks)
                if (a != z) pairs.push_back({a, z});
        if (pairs.empty()) continue;
        auto [a, z] = pairs[rng() % pairs.size()];
        GlueResult g = glue(bq, a, z);
        if (!are_isomorphic(resolve_node(g.bound_quiver, g.vertex), bq)) o.fail("glue-then-resolve mismatch");
        ++forward;
    }
    while (backward < 50) {
        BoundQuiver bq = random_glued(rng);
        std::set<std::string> nodes = node_names(bq);
        if (nodes.empty()) continue;
        std::vector<std::string> list(nodes.begin(), nodes.end());
        std::string x = list[rng() % list.size()];
        ResolutionStep step;
        BoundQuiver split = resolve_node(bq, x, &step);
        if (!are_isomorphic(glue(split, step.plus, step.minus, x).bound_quiver, bq))
            o.fail("resolve-then-glue mismatch");
        // monotonicity along a full resolution in random order
        BoundQuiver cur = bq;
        std::set<std::string> left = nodes;
        while (!left.empty()) {
            std::vector<std::string> l(left.begin(), left.end());
            std::string y = l[rng() % l.size()];
            cur = resolve_node(cur, y);
            left.erase(y);
            ++steps;
            if (node_names(cur) != left) o.fail("node set not monotone at " + y);
        }
        ++backward;
    }
    if (o.pass)
        o.detail = std::to_string(forward + backward) + " round trips, " + std::to_string(steps) + " monotone resolution steps";
    return o;
}

Outcome ac5() {
    Outcome o;
    int families = 0;
    for (std::uint32_t p : {5u, 7u}) {
        Field f = Field::prime(p);
        for (const auto& bq : {model_B(2, 2, f), model_C(1, f), model_C(2, f), model_D(1, 1, f)}) {
            AlgebraBasis ab = build_algebra(bq);
            const Quiver& q = ab.quiver();
            std::vector<Scalar> lambdas;
            for (std::uint32_t i = 0; i < p; ++i) lambdas.push_back(f.from_int(i));
            BrickFamily fam = bongartz_family(ab, q.vertex_index("a"), q.vertex_index("z"), lambdas);
            std::string tag = match_family(bq).family.name() + " over " + f.name();
            if (fam.members.size() != p) o.fail(tag + ": wrong size");
            for (const auto& m : fam.members) {
                if (m.dims() != fam.members.front().dims()) o.fail(tag + ": dimension vectors differ");
                if (hom_dim(m, m) != 1) o.fail(tag + ": not a brick");
            }
            for (std::size_t i = 0; i < fam.members.size(); ++i)
                for (std::size_t j = i + 1; j < fam.members.size(); ++j)
                    if (is_isomorphic(fam.members[i], fam.members[j]) != Tri::False) o.fail(tag + ": isomorphic members");
            if (!fam.verified()) o.fail(tag + ": family self-check");
            ++families;
        }
    }
    if (o.pass) o.detail = std::to_string(families) + " families verified over F5 and F7";
    return o;
}

Outcome ac6() {
    Outcome o;
    double worst = 0;
    auto timed = [&](const BoundQuiver& bq, std::vector<int> d, std::uint32_t p) {
        auto t0 = std::chrono::steady_clock::now();
        std::size_t n = enumerate_bricks(bq, d, Field::prime(p)).classes.size();
        worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return n;
    };
    for (std::uint32_t q : {2u, 3u, 5u}) {
        // brute-force P^1 count: nonzero pairs up to scalars
        std::set<std::pair<std::uint32_t, std::uint32_t>> lines;
        for (std::uint32_t x = 0; x < q; ++x)
            for (std::uint32_t y = 0; y < q; ++y) {
                if (x == 0 && y == 0) continue;
                std::uint32_t inv = 1;
                std::uint32_t lead = x ? x : y;
                while (inv * lead % q != 1) ++inv;
                lines.insert({x * inv % q, y * inv % q});
            }
        std::size_t n = timed(fixture("kronecker"), {1, 1}, q);
        if (n != lines.size() || n != q + 1) o.fail("Kronecker over F" + std::to_string(q) + ": " + std::to_string(n));
    }
    if (timed(fixture("a2"), {1, 1}, 2) != 1) o.fail("A_2 census");
    if (worst > 60) o.fail("census too slow");
    if (o.pass) o.detail = "Kronecker q+1 classes for q = 2,3,5; A_2 one class";
    return o;
}

void dimension_vectors(int nv, int max_total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == nv) {
        int s = 0;
        for (int x : cur) s += x;
        if (s > 0) out.push_back(cur);
        return;
    }
    int used = 0;
    for (int x : cur) used += x;
    for (int k = 0; k + used <= max_total; ++k) {
        cur.push_back(k);
        dimension_vectors(nv, max_total, cur, out);
        cur.pop_back();
    }
}

Outcome ac7() {
    Outcome o;
    std::size_t bricks = 0, vectors = 0;
    for (const char* n : {"glued_a11", "glued_c1"}) {
        BoundQuiver bq = fixture(n).with_field(Field::prime(2));
        const Quiver& q = bq.quiver();
        std::vector<int> nodes = find_nodes(build_algebra(bq)).nodes;
        std::vector<std::vector<int>> ds;
        std::vector<int> cur;
        dimension_vectors(q.vertex_count(), 4, cur, ds);
        for (const auto& d : ds) {
            ++vectors;
            for (const auto& m : enumerate_bricks(bq, d, bq.field()).classes) {
                ++bricks;
                for (int x : nodes) {
                    bool vanishes = false;
                    for (int a : q.incoming(x)) vanishes = vanishes || m.map(a).is_zero();
                    for (int a : q.outgoing(x)) vanishes = vanishes || m.map(a).is_zero();
                    if (!vanishes) o.fail(std::string(n) + ": brick nonzero on every arrow at the node");
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(bricks) + " bricks over " + std::to_string(vectors) + " dimension vectors";
    return o;
}

/// Dimension vector of a one-parameter brick family for a tau-infinite
/// algebra: the Bongartz family when the algebra is not distributive, the
/// band otherwise.
std::optional<std::vector<int>> family_dims(const BoundQuiver& bq, const ClassificationResult& r, const Field& f) {
    AlgebraBasis ab = build_algebra(bq.with_field(f));
    const Quiver& q = ab.quiver();
    std::vector<Scalar> two = {f.zero(), f.one()};
    Family fam = r.family.family;
    if (fam == Family::A || fam == Family::B || fam == Family::C || fam == Family::D)
        return bongartz_family(ab, q.vertex_index(r.vertex_map.at("a")), q.vertex_index(r.vertex_map.at("z")), two).dims;
    if (auto w = is_distributive(ab).witness) return bongartz_family(ab, w->e, w->f, two).dims;
    if (fam == Family::AcyclicAtilde) return std::vector<int>(q.vertex_count(), 1);
    if (fam == Family::Barbell) return std::vector<int>(q.vertex_count(), 2);
    return std::nullopt;
}

Outcome ac8() {
    Outcome o;
    int checked = 0;
    DecideOptions opts;
    opts.probe_budget = 1;
    for (const auto& n : corpus()) {
        BoundQuiver bq;
        try {
            bq = fixture(n);
            build_algebra(bq);
        } catch (const Error&) {
            continue;
        }
        ClassificationResult r = decide_tau(bq, opts);
        if (r.tau != Tri::True) continue;
        for (std::uint32_t p : {2u, 3u}) {
            Field f = Field::prime(p);
            auto d = family_dims(bq, r, f);
            if (!d) {
                o.fail(n + ": no family dimension vector");
                continue;
            }
            std::size_t count = enumerate_bricks(bq.with_field(f), *d, f).classes.size();
            if (count < p) o.fail(n + " over F" + std::to_string(p) + ": " + std::to_string(count) + " classes");
        }
        ++checked;
    }
    if (o.pass) o.detail = std::to_string(checked) + " tau-infinite fixtures, >= q classes for q = 2,3";
    return o;
}

/// Random representation over F2 satisfying the relations.
Representation random_rep(const std::shared_ptr<const BoundQuiver>& bq, const std::vector<int>& d, std::mt19937_64& rng) {
    const Field& f = bq->field();
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<Matrix> maps;
        for (const auto& a : bq->quiver().arrows()) {
            Matrix m(f, d[a.target], d[a.source]);
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.from_int(static_cast<long>(rng() % 2));
            maps.push_back(std::move(m));
        }
        try {
            return Representation::make(bq, d, maps);
        } catch (const PreconditionError&) {
        }
    }
    return Representation::zero(bq, d);
}

/// Count of intertwiners by trying every candidate map over F2. Each
/// intertwining equation is a parity check on the candidate bits.
std::uint64_t brute_hom_count(const Representation& m, const Representation& n) {
    const Quiver& q = m.quiver();
    const Field& f = m.field();
    std::vector<int> offset(q.vertex_count());
    int bits = 0;
    for (int v = 0; v < q.vertex_count(); ++v) {
        offset[v] = bits;
        bits += n.dim(v) * m.dim(v);
    }
    auto bit = [&](int v, int i, int k) { return offset[v] + i * m.dim(v) + k; };  // h_v(i, k)
    std::vector<std::uint64_t> checks;
    for (int a = 0; a < q.arrow_count(); ++a) {
        int s = q.arrow(a).source, t = q.arrow(a).target;
        // (h_t M_a - N_a h_s)(i, j) = 0
        for (int i = 0; i < n.dim(t); ++i)
            for (int j = 0; j < m.dim(s); ++j) {
                std::uint64_t mask = 0;
                for (int k = 0; k < m.dim(t); ++k)
                    if (f.residue(m.map(a)(k, j))) mask ^= std::uint64_t{1} << bit(t, i, k);
                for (int k = 0; k < n.dim(s); ++k)
                    if (f.residue(n.map(a)(i, k))) mask ^= std::uint64_t{1} << bit(s, k, j);
                if (mask) checks.push_back(mask);
            }
    }
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << bits); ++x) {
        bool ok = true;
        for (std::uint64_t c : checks)
            if (std::popcount(c & x) & 1) {
                ok = false;
                break;
            }
        count += ok;
    }
    return count;
}

Outcome ac9() {
    Outcome o;
    Field f2 = Field::prime(2);
    std::vector<std::shared_ptr<const BoundQuiver>> algebras = {
        share(fixture("kronecker").with_field(f2)), share(model_C(1, f2)),      share(model_D(1, 1, f2)),
        share(barbell_loops(f2)),                   share(model_A(1, 2, f2)),   share(fixture("glued_a11").with_field(f2)),
        share(model_E(1, 1, 1, f2))};
    std::mt19937_64 rng(99);
    int pairs = 0, widest = 0;
    while (pairs < 50) {
        auto bq = algebras[rng() % algebras.size()];
        int nv = bq->quiver().vertex_count();
        std::vector<int> dm(nv), dn(nv);
        int bits = 0;
        for (int v = 0; v < nv; ++v) {
            dm[v] = static_cast<int>(rng() % 4);
            dn[v] = static_cast<int>(rng() % 4);
            bits += dm[v] * dn[v];
        }
        if (bits > 20) continue;
        Representation m = random_rep(bq, dm, rng), n = random_rep(bq, dn, rng);
        std::uint64_t brute = brute_hom_count(m, n);
        int h = hom_dim(m, n);
        if (brute != (std::uint64_t{1} << h)) o.fail("hom_dim " + std::to_string(h) + " vs " + std::to_string(brute) + " maps");
        widest = std::max(widest, bits);
        ++pairs;
    }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs, up to 2^" + std::to_string(widest) + " candidate maps";
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
    int failed = 0;
    for (const auto& [id, run] : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << " (" << secs << "s)\n";
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
