#include "tauq/report.hpp"

#include <openssl/evp.h>

#include <sstream>

#include "tauq/errors.hpp"
#include "tauq/structure.hpp"

namespace tauq {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw Error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

namespace {

std::vector<std::string> names(const Quiver& q, const std::vector<int>& vs) {
    std::vector<std::string> out;
    for (int v : vs) out.push_back(q.vertex_name(v));
    return out;
}

std::string format_combination(const Quiver& q, const Field& f, const std::vector<Path>& basis, const Vector& c) {
    Relation r;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!f.is_zero(c[i])) r.terms.push_back({c[i], basis[i]});
    if (r.terms.empty()) return "0";
    return format_relation(q, f, r);
}

std::string tau_name(Tri t) {
    switch (t) {
        case Tri::True: return "infinite";
        case Tri::False: return "finite";
        default: return "unknown";
    }
}

json tag_json(const FamilyTag& t) {
    return json{{"name", t.name()}, {"family", to_string(t.family)}, {"parameters", t.parameters}};
}

}  // namespace

json representation_json(const Representation& m) {
    json maps = json::object();
    const Field& f = m.field();
    for (int a = 0; a < m.quiver().arrow_count(); ++a) {
        json rows = json::array();
        const Matrix& mat = m.map(a);
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < mat.cols(); ++j) row.push_back(f.format(mat(i, j)));
            rows.push_back(row);
        }
        maps[m.quiver().arrow(a).name] = rows;
    }
    return json{{"dims", m.dims()}, {"maps", maps}};
}

json brick_family_json(const BrickFamily& fam) {
    const Quiver& q = fam.algebra->quiver();
    const Field& f = fam.algebra->field();
    json lambdas = json::array(), members = json::array();
    for (const auto& l : fam.lambdas) lambdas.push_back(f.format(l));
    for (const auto& m : fam.members) members.push_back(representation_json(m));
    return json{{"field", f.name()},
                {"e", q.vertex_name(fam.e)},
                {"f", q.vertex_name(fam.f)},
                {"layer", fam.layer},
                {"u", format_combination(q, f, fam.basis, fam.u)},
                {"v", format_combination(q, f, fam.basis, fam.v)},
                {"ideal_dim", fam.ideal_dim},
                {"dims", fam.dims},
                {"lambdas", lambdas},
                {"endo_dims", fam.endo_dims},
                {"all_bricks", fam.all_bricks},
                {"pairwise_non_isomorphic", fam.pairwise_non_isomorphic},
                {"verified", fam.verified()},
                {"members", members}};
}

json census_json(const CensusResult& c) {
    json reps = json::array();
    for (const auto& m : c.classes) reps.push_back(representation_json(m));
    return json{{"field", c.field.name()},   {"dims", c.dims},
                {"pivot_arrow", c.pivot_arrow}, {"pivot_classes", c.pivot_classes},
                {"candidates", c.candidates},   {"satisfying", c.satisfying},
                {"bricks", c.bricks},           {"count", c.classes.size()},
                {"representatives", reps}};
}

json classification_json(const BoundQuiver& bq, const ClassificationResult& r) {
    (void)bq;
    const Certificates& c = r.certificates;
    json log = json::array();
    for (const auto& s : r.resolution_log) log.push_back(json{{"node", s.node}, {"plus", s.plus}, {"minus", s.minus}});
    json j{{"family", tag_json(r.family)},
           {"core", tag_json(r.core)},
           {"resolution_log", log},
           {"vertex_map", r.vertex_map},
           {"arrow_map", r.arrow_map},
           {"tau", tau_name(r.tau)},
           {"preprojective", to_string(r.preprojective)},
           {"certificate",
            json{{"primary", to_string(c.primary)},
                 {"sources", c.sources},
                 {"sinks", c.sinks},
                 {"nodes", c.nodes},
                 {"relation_count", c.relation_count},
                 {"minimal_relations", c.minimal_relations},
                 {"non_quadratic_monomial", c.non_quadratic_monomial},
                 {"monomial_caveat", c.monomial_caveat},
                 {"sink_source_consistent", c.sink_source_consistent},
                 {"node_or_three_consistent", c.node_or_three_consistent},
                 {"node_or_monomial_consistent", c.node_or_monomial_consistent}}},
           {"notes", r.notes}};
    if (r.witness) j["witness"] = brick_family_json(*r.witness);
    if (r.probe)
        j["probe"] = json{{"killed_arrows", r.probe->killed_arrows},
                          {"component", r.probe->component},
                          {"family", tag_json(r.probe->family)}};
    if (r.biserial)
        j["biserial"] = json{{"special_biserial", r.biserial->special_biserial},
                             {"gentle", r.biserial->gentle},
                             {"at_most_two_relations", r.biserial->at_most_two_relations}};
    return j;
}

Report analyze(const BoundQuiver& bq, std::string command, std::string digest) {
    const Quiver& q = bq.quiver();
    Report r;
    r.command = std::move(command);
    r.input_digest = std::move(digest);
    r.field = bq.field().name();
    r.vertex_order = q.vertices();
    r.connected = q.is_connected();
    auto ss = sources_sinks(q);
    r.sources = names(q, ss.sources);
    r.sinks = names(q, ss.sinks);
    AlgebraBasis ab = build_algebra(bq);
    r.nodes = names(q, find_nodes(ab).nodes);
    r.nilpotency_bound = ab.nilpotency_bound();
    r.dimension = ab.dimension();
    auto dist = is_distributive(ab);
    r.distributive = dist.distributive;
    if (dist.witness)
        r.distributivity_witness =
            NamedWitness{q.vertex_name(dist.witness->f), q.vertex_name(dist.witness->e), dist.witness->layer};
    auto rc = minimal_relation_count(ab);
    for (const auto& [k, v] : rc.per_pair)
        if (v) r.relation_counts.push_back({q.vertex_name(k.first), q.vertex_name(k.second), v});
    r.relation_total = rc.total;
    if (!r.connected)
        for (const auto& comp : q.components()) r.components.push_back(analyze(bq.restricted_to(comp), r.command, ""));
    return r;
}

json to_json(const Report& r) {
    json pairs = json::array();
    for (const auto& p : r.relation_counts) pairs.push_back(json{{"source", p.source}, {"target", p.target}, {"r", p.count}});
    json j{{"schema", r.schema},
           {"command", r.command},
           {"input_digest", r.input_digest},
           {"field", r.field},
           {"vertex_order", r.vertex_order},
           {"connected", r.connected},
           {"sources", r.sources},
           {"sinks", r.sinks},
           {"nodes", r.nodes},
           {"nilpotency_bound", r.nilpotency_bound},
           {"dimension", r.dimension},
           {"distributive", r.distributive},
           {"distributivity_witness", nullptr},
           {"relation_counts", pairs},
           {"relation_total", r.relation_total},
           {"warnings", r.warnings}};
    if (r.distributivity_witness)
        j["distributivity_witness"] =
            json{{"f", r.distributivity_witness->f}, {"e", r.distributivity_witness->e}, {"layer", r.distributivity_witness->layer}};
    if (r.classification) j["classification"] = *r.classification;
    if (r.brick_family) j["brick_family"] = *r.brick_family;
    if (r.census) j["census"] = *r.census;
    if (!r.components.empty()) {
        json comps = json::array();
        for (const auto& c : r.components) comps.push_back(to_json(c));
        j["components"] = comps;
    }
    return j;
}

Report report_from_json(const json& j) {
    Report r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kReportSchema) throw ParseError("unsupported report schema " + std::to_string(r.schema));
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.vertex_order = j.at("vertex_order").get<std::vector<std::string>>();
    r.connected = j.at("connected").get<bool>();
    r.sources = j.at("sources").get<std::vector<std::string>>();
    r.sinks = j.at("sinks").get<std::vector<std::string>>();
    r.nodes = j.at("nodes").get<std::vector<std::string>>();
    r.nilpotency_bound = j.at("nilpotency_bound").get<int>();
    r.dimension = j.at("dimension").get<int>();
    r.distributive = j.at("distributive").get<bool>();
    const json& w = j.at("distributivity_witness");
    if (!w.is_null()) r.distributivity_witness = NamedWitness{w.at("f"), w.at("e"), w.at("layer")};
    for (const auto& p : j.at("relation_counts")) r.relation_counts.push_back({p.at("source"), p.at("target"), p.at("r")});
    r.relation_total = j.at("relation_total").get<int>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("classification")) r.classification = j.at("classification");
    if (j.contains("brick_family")) r.brick_family = j.at("brick_family");
    if (j.contains("census")) r.census = j.at("census");
    if (j.contains("components"))
        for (const auto& c : j.at("components")) r.components.push_back(report_from_json(c));
    return r;
}

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + xs[i];
    return s.empty() ? "-" : s;
}

std::string join_ints(const json& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i].get<int>());
    return s;
}

void render_family(std::ostringstream& o, const json& f) {
    o << "brick family over " << f["field"].get<std::string>() << ": e=" << f["e"].get<std::string>()
      << " f=" << f["f"].get<std::string>() << " layer=" << f["layer"].get<int>() << "\n";
    o << "  u = " << f["u"].get<std::string>() << ", v = " << f["v"].get<std::string>() << "\n";
    o << "  members: " << f["members"].size() << ", dimension vector (" << join_ints(f["dims"]) << ")\n";
    o << "  bricks: " << (f["all_bricks"].get<bool>() ? "yes" : "NO")
      << ", pairwise non-isomorphic: " << (f["pairwise_non_isomorphic"].get<bool>() ? "yes" : "NO") << "\n";
}

}  // namespace

std::string render_text(const Report& r) {
    std::ostringstream o;
    o << "input sha256: " << r.input_digest << "\n";
    o << "field: " << r.field << "\n";
    o << "vertices: " << join(r.vertex_order) << "\n";
    o << "connected: " << (r.connected ? "yes" : "no") << "\n";
    o << "sources: " << join(r.sources) << "\n";
    o << "sinks: " << join(r.sinks) << "\n";
    o << "nodes: " << join(r.nodes) << "\n";
    o << "nilpotency bound N: " << r.nilpotency_bound << "\n";
    o << "dim: " << r.dimension << "\n";
    o << "distributive: " << (r.distributive ? "yes" : "no");
    if (r.distributivity_witness)
        o << " (witness e_" << r.distributivity_witness->f << " L e_" << r.distributivity_witness->e << ", layer "
          << r.distributivity_witness->layer << ")";
    o << "\n";
    o << "|R|: " << r.relation_total;
    for (const auto& p : r.relation_counts) o << "  r(" << p.source << "," << p.target << ")=" << p.count;
    o << "\n";
    if (r.classification) {
        const json& c = *r.classification;
        o << "family: " << c["family"]["name"].get<std::string>() << "\n";
        o << "tau-tilting: " << c["tau"].get<std::string>() << "\n";
        o << "certificate: " << c["certificate"]["primary"].get<std::string>() << "\n";
        o << "preprojective component: " << c["preprojective"].get<std::string>() << "\n";
        if (c.contains("probe")) {
            std::vector<std::string> k = c["probe"]["killed_arrows"];
            o << "probe: kill {" << join(k) << "} -> " << c["probe"]["family"]["name"].get<std::string>() << "\n";
        }
        for (const auto& n : c["notes"]) o << "note: " << n.get<std::string>() << "\n";
        if (c.contains("witness")) render_family(o, c["witness"]);
    }
    if (r.brick_family) render_family(o, *r.brick_family);
    if (r.census) {
        const json& c = *r.census;
        o << "census over " << c["field"].get<std::string>() << " at (" << join_ints(c["dims"])
          << "): " << c["count"].get<std::size_t>() << " brick classes (" << c["candidates"].get<std::uint64_t>()
          << " tuples examined)\n";
    }
    for (std::size_t i = 0; i < r.components.size(); ++i)
        o << "component " << i << ": vertices " << join(r.components[i].vertex_order) << ", dim "
          << r.components[i].dimension << "\n";
    for (const auto& w : r.warnings) o << "warning: " << w << "\n";
    return o.str();
}

}  // namespace tauq
