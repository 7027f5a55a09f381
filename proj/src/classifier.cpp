#include "tauq/classifier.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tauq/errors.hpp"
#include "tauq/isomorphism.hpp"
#include "tauq/models.hpp"

namespace tauq {

std::string to_string(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::E: return "E";
        case Family::GluedOf: return "GluedOf";
        case Family::AcyclicAtilde: return "AcyclicAtilde";
        case Family::Barbell: return "Barbell";
        default: return "Unrecognized";
    }
}

namespace {

std::string with_params(Family f, const std::vector<int>& ps) {
    std::string s = to_string(f);
    if (ps.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::to_string(ps[i]);
    return s + ")";
}

}  // namespace

std::string FamilyTag::name() const {
    if (family == Family::GluedOf) return "GluedOf(" + with_params(base, parameters) + ")";
    return with_params(family, parameters);
}

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::NodeList: return "node-list";
        case CertificateKind::ThreeRelations: return "three-relations";
        case CertificateKind::SinkOrSource: return "sink-or-source";
        case CertificateKind::BrickFamilyWitness: return "brick-family";
        case CertificateKind::QuotientWitness: return "quotient-witness";
        default: return "none";
    }
}

namespace {

bool tau_infinite_family(Family f) {
    return f == Family::A || f == Family::B || f == Family::C || f == Family::D;
}

BoundQuiver build_model(Family f, const std::vector<int>& p, const Field& field) {
    switch (f) {
        case Family::A: return model_A(p[0], p[1], field);
        case Family::B: return model_B(p[0], p[1], field);
        case Family::C: return model_C(p[0], field);
        case Family::D: return model_D(p[0], p[1], field);
        default: return model_E(p[0], p[1], p[2], field);
    }
}

// Candidate parameter lists from vertex and arrow counts.
std::vector<std::pair<Family, std::vector<int>>> candidates(int nv, int na) {
    std::vector<std::pair<Family, std::vector<int>>> out;
    if (na == nv) {
        for (int p = 1; 2 * p <= nv; ++p) out.push_back({Family::A, {p, nv - p}});
        if (nv >= 3) out.push_back({Family::C, {nv - 2}});
    }
    if (na == nv + 1) {
        for (int q = 2; 2 * q <= nv - 1; ++q) out.push_back({Family::B, {nv - 1 - q, q}});
        for (int p = 1; p <= nv - 3; ++p) out.push_back({Family::D, {p, nv - 2 - p}});
        for (int p = 1; p <= nv - 1; ++p)
            for (int q = 1; p + q <= nv; ++q) out.push_back({Family::E, {p, q, nv + 1 - p - q}});
    }
    return out;
}

bool b_constraint(int p, int q) { return (q == 2 && q <= p) || (q == 3 && q <= p && p <= 5); }

// Relation on the input quiver spanned by the images of a model relation's
// paths: the kernel of span(paths) -> Λ must be one-dimensional with full
// support.
std::optional<Relation> instantiate(const AlgebraBasis& ab, const QuiverMap& m, const Relation& r) {
    const Field& f = ab.field();
    std::vector<Path> paths;
    for (const auto& t : r.terms) paths.push_back(map_path(m, ab.quiver(), t.path));
    std::size_t rows = static_cast<std::size_t>(ab.pair_dimension(paths[0].source, paths[0].target));
    Matrix A(f, std::max<std::size_t>(rows, 1), paths.size());
    for (std::size_t j = 0; j < paths.size(); ++j) {
        Element e = ab.reduce_path(paths[j]);
        for (std::size_t i = 0; i < e.coords.size(); ++i) A(i, j) = e.coords[i];
    }
    auto ker = A.nullspace();
    if (ker.size() != 1) return std::nullopt;
    Relation out{{}, paths[0].source, paths[0].target};
    for (std::size_t j = 0; j < paths.size(); ++j) {
        if (f.is_zero(ker[0][j])) return std::nullopt;
        out.terms.push_back({ker[0][j], paths[j]});
    }
    return out;
}

}  // namespace

std::optional<ClassificationResult> match_core(const BoundQuiver& bq) {
    const Quiver& q = bq.quiver();
    if (!q.is_connected()) return std::nullopt;
    AlgebraBasis ab = build_algebra(bq);
    for (const auto& [fam, params] : candidates(q.vertex_count(), q.arrow_count())) {
        BoundQuiver model = build_model(fam, params, bq.field());
        std::optional<ClassificationResult> found;
        for_each_quiver_isomorphism(model.quiver(), q, [&](const QuiverMap& m) {
            std::vector<Relation> inst;
            for (const auto& r : model.relations()) {
                auto ir = instantiate(ab, m, r);
                if (!ir) return false;
                inst.push_back(std::move(*ir));
            }
            try {
                AlgebraBasis ai = build_algebra(BoundQuiver::make(q, inst, bq.field(), false));
                if (ai.dimension() != ab.dimension()) return false;
            } catch (const AdmissibilityError&) {
                return false;
            }
            ClassificationResult res;
            res.family = FamilyTag{fam, fam, params};
            for (int v = 0; v < model.quiver().vertex_count(); ++v)
                res.vertex_map[model.quiver().vertex_name(v)] = q.vertex_name(m.vertex[v]);
            for (int a = 0; a < model.quiver().arrow_count(); ++a)
                res.arrow_map[model.quiver().arrow(a).name] = q.arrow(m.arrow[a]).name;
            found = std::move(res);
            return true;
        });
        if (!found) continue;
        if (fam == Family::B && !b_constraint(params[0], params[1])) {
            ClassificationResult un;
            un.notes.push_back("B-shaped with arms (" + std::to_string(params[0]) + "," + std::to_string(params[1]) +
                               ",2) outside the parameter range 2=q<=p or 3=q<=p<=5");
            return un;
        }
        if (fam == Family::C || fam == Family::D)
            found->notes.push_back("cycle length at m taken equal to p");
        found->core = found->family;
        return found;
    }
    return std::nullopt;
}

ClassificationResult match_family(const BoundQuiver& bq) {
    Resolution res = resolve_all(bq);
    ClassificationResult out;
    std::optional<ClassificationResult> core;
    if (!res.bound_quiver.quiver().is_connected())
        out.notes.push_back("node-free core is disconnected");
    else
        core = match_core(res.bound_quiver);
    if (core) out = std::move(*core);
    out.resolution_log = res.log;
    if (!res.log.empty() && out.family.family != Family::Unrecognized) {
        out.core = out.family;
        out.family.family = Family::GluedOf;
        out.family.base = out.core.family;
    }
    return out;
}

namespace {

bool vanishes(const AlgebraBasis& ab, int a, int b) {
    const Quiver& q = ab.quiver();
    return ab.is_zero(ab.reduce_path(Path::of_arrow(q, b).after(Path::of_arrow(q, a))));
}

}  // namespace

bool is_special_biserial(const AlgebraBasis& ab) {
    const Quiver& q = ab.quiver();
    for (int v = 0; v < q.vertex_count(); ++v)
        if (q.incoming(v).size() > 2 || q.outgoing(v).size() > 2) return false;
    for (int b = 0; b < q.arrow_count(); ++b) {
        int before = 0, after = 0;
        for (int a : q.incoming(q.arrow(b).source))
            if (!vanishes(ab, a, b)) ++before;
        for (int c : q.outgoing(q.arrow(b).target))
            if (!vanishes(ab, b, c)) ++after;
        if (before > 1 || after > 1) return false;
    }
    return true;
}

bool is_gentle(const AlgebraBasis& ab) {
    if (!is_special_biserial(ab)) return false;
    const Quiver& q = ab.quiver();
    std::vector<Relation> quadratic;
    for (int b = 0; b < q.arrow_count(); ++b) {
        int before = 0, after = 0;
        for (int a : q.incoming(q.arrow(b).source))
            if (vanishes(ab, a, b)) {
                ++before;
                Path p = Path::of_arrow(q, b).after(Path::of_arrow(q, a));
                quadratic.push_back(Relation{{{ab.field().one(), p}}, p.source, p.target});
            }
        for (int c : q.outgoing(q.arrow(b).target))
            if (vanishes(ab, b, c)) ++after;
        if (before > 1 || after > 1) return false;
    }
    try {
        AlgebraBasis mono = build_algebra(BoundQuiver::make(q, quadratic, ab.field(), false));
        return mono.dimension() == ab.dimension();
    } catch (const AdmissibilityError&) {
        return false;
    }
}

namespace {

struct Edge {
    int arrow;
    int u, v;  // source, target
};

std::optional<FamilyTag> match_atilde(const BoundQuiver& bq) {
    const Quiver& q = bq.quiver();
    int nv = q.vertex_count();
    if (nv < 2 || q.arrow_count() != nv || !q.is_connected() || !bq.relations().empty() || q.has_oriented_cycle())
        return std::nullopt;
    for (int v = 0; v < nv; ++v)
        if (q.incoming(v).size() + q.outgoing(v).size() != 2) return std::nullopt;
    return FamilyTag{Family::AcyclicAtilde, Family::AcyclicAtilde, {nv - 1}};
}

struct Walk {
    std::vector<int> arrows;  // in walk order
    std::vector<bool> forward;
    int end = -1;
};

std::optional<FamilyTag> match_barbell(const BoundQuiver& bq, const AlgebraBasis& ab, std::vector<std::string>& notes) {
    const Quiver& q = bq.quiver();
    int nv = q.vertex_count();
    if (!q.is_connected() || q.arrow_count() != nv + 1) return std::nullopt;
    std::vector<int> deg(nv), hubs;
    for (int v = 0; v < nv; ++v) {
        deg[v] = static_cast<int>(q.incoming(v).size() + q.outgoing(v).size());
        if (deg[v] == 3)
            hubs.push_back(v);
        else if (deg[v] != 2)
            return std::nullopt;
    }
    if (hubs.size() != 2) return std::nullopt;

    auto incident = [&](int v) {
        std::vector<int> out;
        for (int a : q.outgoing(v)) out.push_back(a);
        for (int a : q.incoming(v))
            if (q.arrow(a).source != v) out.push_back(a);
        return out;
    };
    auto walk = [&](int start, int first) {
        Walk w;
        int cur = start, a = first;
        for (;;) {
            const Arrow& ar = q.arrow(a);
            bool fwd = ar.source == cur;
            int next = fwd ? ar.target : ar.source;
            w.arrows.push_back(a);
            w.forward.push_back(fwd);
            if (deg[next] == 3) {
                w.end = next;
                return w;
            }
            int other = -1;
            for (int b : incident(next))
                if (b != a) other = b;
            cur = next;
            a = other;
        }
    };

    std::optional<Walk> bar;
    struct Side {
        int in = -1, out = -1;
    } side[2];
    for (int h = 0; h < 2; ++h) {
        int x = hubs[h];
        std::set<int> used;
        for (int a : incident(x)) {
            if (used.count(a)) continue;
            Walk w = walk(x, a);
            for (int b : w.arrows) used.insert(b);
            if (w.end != x) {
                if (h == 0) bar = w;
                continue;
            }
            // cycle at x: first and last arrows meet x
            int first = w.arrows.front(), last = w.arrows.back();
            for (int e : {first, last}) {
                if (q.arrow(e).target == x) side[h].in = e;
                if (q.arrow(e).source == x) side[h].out = e;
            }
            if (first == last && q.arrow(first).source == q.arrow(first).target) side[h].in = side[h].out = first;
            bool into = q.arrow(first).target == x && q.arrow(last).target == x && first != last;
            bool outof = q.arrow(first).source == x && q.arrow(last).source == x && first != last;
            if (into || outof) return std::nullopt;
        }
        if (side[h].in < 0 || side[h].out < 0) return std::nullopt;
    }
    if (!bar || bar->end != hubs[1]) return std::nullopt;
    bool all_fwd = std::all_of(bar->forward.begin(), bar->forward.end(), [](bool b) { return b; });
    bool all_bwd = std::none_of(bar->forward.begin(), bar->forward.end(), [](bool b) { return b; });
    if (all_fwd || all_bwd) {
        if (bar->arrows.size() == 1) notes.push_back("barbell-shaped with a bar of length 1; left unrecognised");
        return std::nullopt;
    }
    std::vector<Relation> rels;
    for (int h = 0; h < 2; ++h) {
        Path p = Path::of_arrow(q, side[h].out).after(Path::of_arrow(q, side[h].in));
        rels.push_back(Relation{{{bq.field().one(), p}}, p.source, p.target});
    }
    for (const auto& r : rels)
        if (!ideal_contains(ab, r)) return std::nullopt;
    try {
        AlgebraBasis model = build_algebra(BoundQuiver::make(q, rels, bq.field(), false));
        if (model.dimension() != ab.dimension()) return std::nullopt;
    } catch (const AdmissibilityError&) {
        return std::nullopt;
    }
    return FamilyTag{Family::Barbell, Family::Barbell, {}};
}

}  // namespace

ClassificationResult classify_biserial(const BoundQuiver& bq) {
    AlgebraBasis ab = build_algebra(bq);
    if (!is_special_biserial(ab)) throw PreconditionError("classify_biserial: the bound quiver is not special biserial");
    ClassificationResult r;
    BiserialReport rep;
    rep.special_biserial = true;
    rep.gentle = is_gentle(ab);
    rep.at_most_two_relations = minimal_relation_count(ab).total <= 2;
    r.biserial = rep;
    if (auto t = match_atilde(bq)) {
        r.family = *t;
    } else if (auto b = match_barbell(bq, ab, r.notes)) {
        r.family = *b;
    }
    r.core = r.family;
    if (r.family.family != Family::Unrecognized) {
        r.tau = Tri::True;
        r.certificates.primary = CertificateKind::QuotientWitness;
        r.probe = ProbeWitness{{}, bq.quiver().vertices(), r.family};
    }
    r.preprojective = preprojective_flag(r);
    return r;
}

Tri preprojective_flag(const ClassificationResult& r) {
    switch (r.family.family) {
        case Family::A:
        case Family::B:
        case Family::AcyclicAtilde: return Tri::True;
        case Family::C:
        case Family::D:
        case Family::E:
        case Family::GluedOf:
        case Family::Barbell: return Tri::False;
        default: return Tri::Unknown;
    }
}

namespace {

BoundQuiver kill_arrows(const BoundQuiver& bq, const std::vector<int>& killed) {
    const Quiver& q = bq.quiver();
    std::set<int> k(killed.begin(), killed.end());
    std::vector<Quiver::ArrowSpec> arrows;
    for (int a = 0; a < q.arrow_count(); ++a)
        if (!k.count(a)) arrows.push_back({q.arrow(a).name, q.vertex_name(q.arrow(a).source), q.vertex_name(q.arrow(a).target)});
    Quiver nq = Quiver::make(q.vertices(), arrows);
    std::vector<Relation> rels;
    for (const auto& r : bq.relations()) {
        Relation nr{{}, r.source, r.target};
        for (const auto& t : r.terms) {
            bool dead = false;
            Path p{t.path.source, t.path.target, {}};
            for (int a : t.path.arrows) {
                if (k.count(a)) {
                    dead = true;
                    break;
                }
                p.arrows.push_back(nq.arrow_index(q.arrow(a).name));
            }
            if (!dead) nr.terms.push_back({t.coefficient, std::move(p)});
        }
        if (!nr.terms.empty()) rels.push_back(std::move(nr));
    }
    return BoundQuiver::make(std::move(nq), std::move(rels), bq.field(), false);
}

std::optional<FamilyTag> tau_infinite_component(const BoundQuiver& comp) {
    if (comp.quiver().arrow_count() == 0) return std::nullopt;
    try {
        ClassificationResult r = match_family(comp);
        if (tau_infinite_family(r.family.family)) return r.family;
        AlgebraBasis ab = build_algebra(comp);
        if (r.family.family == Family::Unrecognized && is_special_biserial(ab)) {
            ClassificationResult b = classify_biserial(comp);
            if (b.family.family != Family::Unrecognized) return b.family;
        }
    } catch (const Error&) {
    }
    return std::nullopt;
}

}  // namespace

std::optional<ProbeWitness> sufficient_tau_infinite_probe(const BoundQuiver& bq, int budget) {
    const Quiver& q = bq.quiver();
    int na = q.arrow_count();
    for (int size = 0; size <= std::min(budget, na); ++size) {
        std::vector<int> subset(size);
        for (int i = 0; i < size; ++i) subset[i] = i;
        for (;;) {
            BoundQuiver quot = kill_arrows(bq, subset);
            for (const auto& comp : quot.quiver().components()) {
                BoundQuiver part = quot.restricted_to(comp);
                if (auto fam = tau_infinite_component(part)) {
                    ProbeWitness w;
                    for (int a : subset) w.killed_arrows.push_back(q.arrow(a).name);
                    for (int v : comp) w.component.push_back(q.vertex_name(v));
                    w.family = *fam;
                    return w;
                }
            }
            // next combination in lexicographic order
            int i = size - 1;
            while (i >= 0 && subset[i] == na - size + i) --i;
            if (i < 0) break;
            ++subset[i];
            for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    return std::nullopt;
}

ClassificationResult decide_tau(const BoundQuiver& bq, const DecideOptions& options) {
    AlgebraBasis ab = build_algebra(bq);
    ClassificationResult r = match_family(bq);
    const Quiver& q = bq.quiver();
    Family fam = r.family.family;

    if (fam == Family::Unrecognized && is_special_biserial(ab)) {
        ClassificationResult b = classify_biserial(bq);
        if (b.family.family != Family::Unrecognized) {
            b.notes.insert(b.notes.begin(), r.notes.begin(), r.notes.end());
            b.resolution_log = r.resolution_log;
            r = std::move(b);
        } else {
            r.biserial = b.biserial;
            r.notes.insert(r.notes.end(), b.notes.begin(), b.notes.end());
        }
        fam = r.family.family;
    }

    Certificates& c = r.certificates;
    auto ss = sources_sinks(q);
    for (int v : ss.sources) c.sources.push_back(q.vertex_name(v));
    for (int v : ss.sinks) c.sinks.push_back(q.vertex_name(v));
    for (int v : find_nodes(ab).nodes) c.nodes.push_back(q.vertex_name(v));
    RelationCount rc = minimal_relation_count(ab);
    c.relation_count = rc.total;
    for (std::size_t i : rc.minimal_subset) {
        const Relation& rel = bq.relations()[i];
        c.minimal_relations.push_back(format_relation(q, bq.field(), rel));
        if (rel.is_monomial() && rel.terms[0].path.length() >= 3) c.non_quadratic_monomial = true;
    }
    c.monomial_caveat = "monomial test evaluated on the minimal generating subset of the given relations";

    if (tau_infinite_family(fam)) {
        r.tau = Tri::True;
        c.primary = CertificateKind::SinkOrSource;
    } else if (fam == Family::E) {
        r.tau = Tri::False;
        c.primary = CertificateKind::ThreeRelations;
    } else if (fam == Family::GluedOf) {
        r.tau = Tri::False;
        c.primary = CertificateKind::NodeList;
    } else if (fam == Family::Unrecognized && options.probe_budget >= 0) {
        if (auto w = sufficient_tau_infinite_probe(bq, options.probe_budget)) {
            r.probe = *w;
            r.tau = Tri::True;
            c.primary = CertificateKind::QuotientWitness;
        }
    }

    bool has_ss = !c.sources.empty() || !c.sinks.empty();
    if (fam == Family::GluedOf || fam == Family::E || tau_infinite_family(fam)) {
        bool finite = r.tau == Tri::False;
        c.sink_source_consistent = has_ss == !finite;
        c.node_or_three_consistent = (!c.nodes.empty() || c.relation_count == 3) == finite;
        c.node_or_monomial_consistent = (!c.nodes.empty() || c.non_quadratic_monomial) == finite;
    } else if (r.tau == Tri::True && (fam == Family::AcyclicAtilde || fam == Family::Barbell)) {
        c.sink_source_consistent = has_ss;
    }

    if (r.tau == Tri::True && options.witness_field) {
        const Field& F = *options.witness_field;
        if (!F.is_finite()) throw PreconditionError("witness: a prime field F_p is required");
        int count = options.witness_count > 0 ? options.witness_count : static_cast<int>(F.characteristic());
        if (static_cast<std::uint32_t>(count) > F.characteristic())
            throw PreconditionError("witness: field F" + std::to_string(F.characteristic()) + " has fewer than " +
                                    std::to_string(count) + " elements");
        std::vector<Scalar> lambdas;
        for (int i = 0; i < count; ++i) lambdas.push_back(F.from_int(i));
        AlgebraBasis abf = build_algebra(bq.with_field(F));
        std::optional<std::pair<int, int>> ef;
        if (tau_infinite_family(fam)) {
            ef = std::make_pair(q.vertex_index(r.vertex_map.at("a")), q.vertex_index(r.vertex_map.at("z")));
        } else {
            auto dist = is_distributive(abf);
            if (dist.witness) ef = std::make_pair(dist.witness->e, dist.witness->f);
        }
        if (ef) {
            try {
                r.witness = bongartz_family(abf, ef->first, ef->second, lambdas);
            } catch (const PreconditionError& e) {
                r.notes.push_back(std::string("no brick family: ") + e.what());
            }
        } else {
            r.notes.push_back("no brick family: the algebra is distributive");
        }
    }
    r.preprojective = preprojective_flag(r);
    return r;
}

}  // namespace tauq
