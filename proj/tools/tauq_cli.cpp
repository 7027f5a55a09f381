// tauq: command-line front end for bound-quiver analysis.
//
// Exit codes: 0 ok, 1 parse or usage error, 2 not admissible, 3 budget
// exceeded, 4 precondition failed, 5 certificate verification failed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tauq/census.hpp"
#include "tauq/classifier.hpp"
#include "tauq/errors.hpp"
#include "tauq/report.hpp"
#include "tauq/structure.hpp"

using namespace tauq;

namespace {

struct Input {
    std::string text;
    std::string digest;
    BoundQuiver bq;
};

Input load(const std::string& path, bool allow_disconnected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    Input out;
    out.text = ss.str();
    out.digest = sha256_hex(out.text);
    out.bq = parse_bound_quiver(out.text, ParseOptions{allow_disconnected});
    return out;
}

void emit(const Report& r, const std::string& format) {
    if (format == "json")
        std::cout << to_json(r).dump(2) << "\n";
    else
        std::cout << render_text(r);
}

std::vector<int> parse_dims(const std::string& s, const Quiver& q) {
    std::vector<int> d;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            d.push_back(v);
        } catch (const std::exception&) {
            throw PreconditionError("--dim: '" + item + "' is not a nonnegative integer");
        }
    }
    if (static_cast<int>(d.size()) != q.vertex_count()) {
        std::string order;
        for (const auto& v : q.vertices()) order += (order.empty() ? "" : ",") + v;
        throw PreconditionError("--dim needs " + std::to_string(q.vertex_count()) + " entries in vertex order (" +
                                order + ")");
    }
    return d;
}

int run(int argc, char** argv) {
    CLI::App app{"tauq: distributivity, nodes and tau-tilting finiteness of bound quivers"};
    app.require_subcommand(1);
    std::string file, format = "text";
    bool allow_disconnected = false;
    int max_bound = kDefaultMaxBound;

    auto common = [&](CLI::App* sub) {
        sub->add_option("file", file, ".bq input")->required();
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--allow-disconnected", allow_disconnected, "analyze components independently");
        sub->add_option("--max-bound", max_bound, "largest nilpotency bound tried")->check(CLI::PositiveNumber);
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "algebra, nodes, distributivity, relation counts");
    common(analyze_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "family, tau-tilting verdict and certificates");
    common(classify_cmd);
    int probe = -1;
    bool witness = false;
    std::string field_name;
    classify_cmd->add_option("--probe", probe, "arrow-subset size for the quotient probe")->check(CLI::NonNegativeNumber);
    classify_cmd->add_flag("--witness", witness, "attach a brick family (needs --field)");
    classify_cmd->add_option("--field", field_name, "prime field for witnesses, e.g. F5");

    auto* resolve_cmd = app.add_subcommand("resolve", "resolve a node; prints .bq");
    std::string node;
    resolve_cmd->add_option("file", file, ".bq input")->required();
    resolve_cmd->add_option("--node", node, "node to resolve")->required();

    auto* glue_cmd = app.add_subcommand("glue", "glue a source with a sink; prints .bq");
    std::string source, sink, name;
    glue_cmd->add_option("file", file, ".bq input")->required();
    glue_cmd->add_option("--source", source, "source vertex")->required();
    glue_cmd->add_option("--sink", sink, "sink vertex")->required();
    glue_cmd->add_option("--name", name, "name of the glued vertex");

    auto* family_cmd = app.add_subcommand("family", "Bongartz one-parameter brick family");
    common(family_cmd);
    std::string vertex, target;
    int count = 0;
    family_cmd->add_option("--vertex", vertex, "idempotent vertex e");
    family_cmd->add_option("--target", target, "vertex f of the layer fLe");
    family_cmd->add_option("--field", field_name, "prime field, e.g. F5")->required();
    family_cmd->add_option("--count", count, "number of parameter values 0,1,...")->required()->check(CLI::PositiveNumber);

    auto* bricks_cmd = app.add_subcommand("bricks", "brick census for one dimension vector");
    common(bricks_cmd);
    std::string dims;
    std::uint64_t budget = CensusOptions{}.budget;
    unsigned threads = 0;
    bricks_cmd->add_option("--dim", dims, "dimension vector in vertex order, e.g. 1,1")->required();
    bricks_cmd->add_option("--field", field_name, "prime field, e.g. F2")->required();
    bricks_cmd->add_option("--budget", budget, "maximum tuples examined");
    bricks_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (*resolve_cmd) {
        Input in = load(file, true);
        std::cout << serialize_bound_quiver(resolve_node(in.bq, node));
        return 0;
    }
    if (*glue_cmd) {
        Input in = load(file, true);
        GlueResult g = glue(in.bq, source, sink, name.empty() ? std::nullopt : std::optional<std::string>(name));
        for (const auto& w : g.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << serialize_bound_quiver(g.bound_quiver);
        return 0;
    }

    Input in = load(file, allow_disconnected);
    build_algebra(in.bq, max_bound);  // admissibility gate with the requested bound
    std::string cmd = app.get_subcommands().front()->get_name();
    Report rep = analyze(in.bq, cmd, in.digest);

    if (*classify_cmd) {
        DecideOptions opts;
        opts.probe_budget = probe;
        if (witness) {
            if (field_name.empty()) throw PreconditionError("--witness requires --field Fq");
            opts.witness_field = Field::parse(field_name);
        }
        if (rep.connected) {
            rep.classification = classification_json(in.bq, decide_tau(in.bq, opts));
        } else {
            auto comps = in.bq.quiver().components();
            for (std::size_t i = 0; i < comps.size(); ++i) {
                BoundQuiver part = in.bq.restricted_to(comps[i]);
                rep.components[i].classification = classification_json(part, decide_tau(part, opts));
            }
        }
        emit(rep, format);
        return 0;
    }
    if (*family_cmd) {
        Field F = Field::parse(field_name);
        if (!F.is_finite()) throw PreconditionError("family: --field must be a prime field F_p");
        if (static_cast<std::uint32_t>(count) > F.characteristic())
            throw PreconditionError("family: q = " + std::to_string(F.characteristic()) + " < n = " +
                                    std::to_string(count) + " parameter values");
        BoundQuiver bf = in.bq.with_field(F);
        AlgebraBasis ab = build_algebra(bf, max_bound);
        const Quiver& q = bf.quiver();
        int e, f;
        if (vertex.empty() || target.empty()) {
            auto dist = is_distributive(ab);
            if (!dist.witness) throw PreconditionError("family: the algebra is distributive, no layer has dimension > 1");
            e = vertex.empty() ? dist.witness->e : q.vertex_index(vertex);
            f = target.empty() ? dist.witness->f : q.vertex_index(target);
        } else {
            e = q.vertex_index(vertex);
            f = q.vertex_index(target);
        }
        std::vector<Scalar> lambdas;
        for (int i = 0; i < count; ++i) lambdas.push_back(F.from_int(i));
        BrickFamily fam = bongartz_family(ab, e, f, lambdas);
        rep.brick_family = brick_family_json(fam);
        if (!fam.verified()) rep.warnings.push_back("brick family failed verification");
        emit(rep, format);
        return fam.verified() ? 0 : 5;
    }
    if (*bricks_cmd) {
        Field F = Field::parse(field_name);
        CensusOptions opts;
        opts.budget = budget;
        opts.threads = threads;
        CensusResult c = enumerate_bricks(in.bq, parse_dims(dims, in.bq.quiver()), F, opts);
        rep.census = census_json(c);
        emit(rep, format);
        return 0;
    }
    emit(rep, format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const AdmissibilityError& e) {
        std::cerr << "not admissible: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
