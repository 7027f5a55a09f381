#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tauq/census.hpp"
#include "tauq/classifier.hpp"
#include "tauq/errors.hpp"
#include "tauq/isomorphism.hpp"
#include "tauq/models.hpp"
#include "tauq/report.hpp"
#include "tauq/structure.hpp"

namespace py = pybind11;
using namespace tauq;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
std::string analyze_json(const BoundQuiver& bq) { return to_json(analyze(bq)).dump(); }

std::string classify_json(const BoundQuiver& bq, std::optional<std::string> witness_field, int probe) {
    DecideOptions opts;
    opts.probe_budget = probe;
    if (witness_field) opts.witness_field = Field::parse(*witness_field);
    return classification_json(bq, decide_tau(bq, opts)).dump();
}

std::string bricks_json(const BoundQuiver& bq, const std::vector<int>& dims, const std::string& field,
                        std::uint64_t budget, unsigned threads) {
    Field f = Field::parse(field);
    CensusResult c;
    {
        py::gil_scoped_release release;
        c = enumerate_bricks(bq.with_field(f), dims, f, CensusOptions{budget, threads});
    }
    return census_json(c).dump();
}

std::string family_json(const BoundQuiver& bq, const std::string& field, int count, std::optional<std::string> vertex,
                        std::optional<std::string> target) {
    Field F = Field::parse(field);
    if (!F.is_finite()) throw PreconditionError("family: field must be a prime field F_p");
    if (count < 1 || static_cast<std::uint32_t>(count) > F.characteristic())
        throw PreconditionError("family: q = " + std::to_string(F.characteristic()) + " < n = " +
                                std::to_string(count) + " parameter values");
    AlgebraBasis ab = build_algebra(bq.with_field(F));
    const Quiver& q = ab.quiver();
    int e = -1, f = -1;
    if (!vertex || !target) {
        auto dist = is_distributive(ab);
        if (!dist.witness) throw PreconditionError("family: the algebra is distributive, no layer has dimension > 1");
        e = dist.witness->e;
        f = dist.witness->f;
    }
    if (vertex) e = q.vertex_index(*vertex);
    if (target) f = q.vertex_index(*target);
    std::vector<Scalar> lambdas;
    for (int i = 0; i < count; ++i) lambdas.push_back(F.from_int(i));
    return brick_family_json(bongartz_family(ab, e, f, lambdas)).dump();
}

std::vector<std::string> vertex_names(const BoundQuiver& bq) {
    std::vector<std::string> out;
    for (int v = 0; v < bq.quiver().vertex_count(); ++v) out.push_back(bq.quiver().vertex_name(v));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bound quivers, tau-tilting finiteness and brick censuses";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<AdmissibilityError>(m, "AdmissibilityError", base.ptr());
    py::register_exception<BudgetError>(m, "BudgetError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

    py::class_<BoundQuiver>(m, "BoundQuiver")
        .def_property_readonly("vertices", &vertex_names)
        .def_property_readonly("arrows",
                               [](const BoundQuiver& bq) {
                                   std::vector<std::string> out;
                                   for (const auto& a : bq.quiver().arrows()) out.push_back(a.name);
                                   return out;
                               })
        .def_property_readonly("field", [](const BoundQuiver& bq) { return bq.field().name(); })
        .def_property_readonly("relation_count", [](const BoundQuiver& bq) { return bq.relations().size(); })
        .def("with_field", [](const BoundQuiver& bq, const std::string& f) { return bq.with_field(Field::parse(f)); })
        .def("serialize", &serialize_bound_quiver)
        .def("__eq__", [](const BoundQuiver& a, const BoundQuiver& b) { return a == b; })
        .def("__repr__", [](const BoundQuiver& bq) {
            return "<BoundQuiver " + std::to_string(bq.quiver().vertex_count()) + " vertices, " +
                   std::to_string(bq.quiver().arrow_count()) + " arrows over " + bq.field().name() + ">";
        });

    m.def(
        "parse",
        [](const std::string& text, bool allow_disconnected) {
            return parse_bound_quiver(text, ParseOptions{allow_disconnected});
        },
        py::arg("text"), py::arg("allow_disconnected") = false);
    m.def("are_isomorphic", &are_isomorphic);

    m.def("_analyze", &analyze_json);
    m.def("_classify", &classify_json, py::arg("bq"), py::arg("witness_field") = std::nullopt, py::arg("probe") = 0);
    m.def("_bricks", &bricks_json, py::arg("bq"), py::arg("dims"), py::arg("field"), py::arg("budget") = 10000000,
          py::arg("threads") = 0);
    m.def("_family", &family_json, py::arg("bq"), py::arg("field"), py::arg("count"),
          py::arg("vertex") = std::nullopt, py::arg("target") = std::nullopt);

    m.def(
        "glue",
        [](const BoundQuiver& bq, const std::string& a, const std::string& z, std::optional<std::string> name) {
            GlueResult g = glue(bq, a, z, name);
            return py::make_tuple(g.bound_quiver, g.vertex, g.warnings);
        },
        py::arg("bq"), py::arg("source"), py::arg("sink"), py::arg("name") = std::nullopt);
    m.def(
        "resolve",
        [](const BoundQuiver& bq, const std::string& x) { return resolve_node(bq, x); }, py::arg("bq"),
        py::arg("node"));
    m.def("resolve_all", [](const BoundQuiver& bq) {
        Resolution r = resolve_all(bq);
        std::vector<std::string> nodes;
        for (const auto& s : r.log) nodes.push_back(s.node);
        return py::make_tuple(r.bound_quiver, nodes);
    });

    auto field = [](std::optional<std::string> f) { return f ? Field::parse(*f) : Field::rationals(); };
    m.def("model_A", [=](int p, int q, std::optional<std::string> f) { return model_A(p, q, field(f)); },
          py::arg("p"), py::arg("q"), py::arg("field") = std::nullopt);
    m.def("model_B", [=](int p, int q, std::optional<std::string> f) { return model_B(p, q, field(f)); },
          py::arg("p"), py::arg("q"), py::arg("field") = std::nullopt);
    m.def("model_C", [=](int p, std::optional<std::string> f) { return model_C(p, field(f)); }, py::arg("p"),
          py::arg("field") = std::nullopt);
    m.def("model_D", [=](int p, int q, std::optional<std::string> f) { return model_D(p, q, field(f)); },
          py::arg("p"), py::arg("q"), py::arg("field") = std::nullopt);
    m.def("model_E",
          [=](int p, int q, int r, std::optional<std::string> f) { return model_E(p, q, r, field(f)); },
          py::arg("p"), py::arg("q"), py::arg("r"), py::arg("field") = std::nullopt);
    m.def("linear_A", [=](int n, std::optional<std::string> f) { return linear_A(n, field(f)); }, py::arg("n"),
          py::arg("field") = std::nullopt);
}
