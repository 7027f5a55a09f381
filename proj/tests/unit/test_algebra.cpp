#include <doctest.h>

#include <set>

#include "support.hpp"
#include "tauq/algebra.hpp"
#include "tauq/errors.hpp"
#include "tauq/models.hpp"

using namespace tauq;
using namespace tauq::test;

namespace {

std::vector<std::string> basis_names(const AlgebraBasis& ab, const std::string& x, const std::string& y) {
    const Quiver& q = ab.quiver();
    std::vector<std::string> out;
    for (const auto& p : ab.basis(q.vertex_index(x), q.vertex_index(y))) out.push_back(format_path(q, p));
    return out;
}

Element path_element(const AlgebraBasis& ab, const std::string& text) {
    return ab.reduce_path(parse_path(ab.quiver(), text));
}

std::vector<Term> relation_terms(const Relation& r) { return r.terms; }

/// dim e_y Λ e_x from scratch: all paths x -> y of length < N modulo the span
/// of p.r.q for every relation r, truncated at length N.
int dense_pair_dim(const BoundQuiver& bq, int n, int x, int y) {
    const Quiver& q = bq.quiver();
    const Field& f = bq.field();
    std::vector<Path> paths = enumerate_paths(q, x, y, n - 1);
    if (paths.empty()) return 0;
    std::map<std::vector<int>, std::size_t> col;
    for (std::size_t i = 0; i < paths.size(); ++i) col[paths[i].arrows] = i;
    std::vector<Vector> rows;
    for (const auto& r : bq.relations()) {
        int budget = n - 1 - r.min_length();
        if (budget < 0) continue;
        for (const auto& pre : enumerate_paths(q, x, r.source, budget))
            for (const auto& post : enumerate_paths(q, r.target, y, budget - pre.length())) {
                Vector v = zero_vector(f, paths.size());
                for (const auto& t : r.terms) {
                    Path whole = post.after(t.path.after(pre));
                    if (whole.length() >= n) continue;
                    v[col.at(whole.arrows)] = t.coefficient;
                }
                rows.push_back(std::move(v));
            }
    }
    if (rows.empty()) return static_cast<int>(paths.size());
    Matrix m(f, rows.size(), paths.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < paths.size(); ++j) m(i, j) = rows[i][j];
    return static_cast<int>(paths.size() - m.rank());
}

std::vector<BoundQuiver> small_models() {
    return {model_A(1, 1), model_A(2, 3), model_B(2, 2), model_B(3, 2), model_C(1),   model_C(2),
            model_C(3),    model_D(1, 1), model_D(2, 1), model_D(1, 2), model_E(1, 1, 1), model_E(2, 1, 1),
            linear_A(4),   barbell_loops(), acyclic_Atilde({true, false, true, false}),
            fixture("glued_a11"), fixture("glued_c1"), fixture("glued_d11"), fixture("kronecker_pendant")};
}

/// Random distributive instances: acyclic random quivers, some monomial
/// relations, kept when the algebra is distributive.
std::vector<BoundQuiver> random_distributive(std::mt19937_64& rng, int wanted) {
    std::vector<BoundQuiver> out;
    while (static_cast<int>(out.size()) < wanted) {
        Quiver q = random_quiver(rng, 3 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 2), true);
        std::vector<Relation> rels;
        for (int x = 0; x < q.vertex_count(); ++x)
            for (const auto& p : paths_from(q, x, 3))
                if (p.length() >= 2 && rng() % 3 == 0) rels.push_back(Relation{{Term{Field{}.one(), p}}, p.source, p.target});
        BoundQuiver bq = BoundQuiver::make(q, rels, Field{});
        AlgebraBasis ab = build_algebra(bq);
        if (is_distributive(ab).distributive) out.push_back(bq);
    }
    return out;
}

}  // namespace

TEST_CASE("Kronecker algebra") {
    AlgebraBasis ab = build_algebra(fixture("kronecker"));
    const Quiver& q = ab.quiver();
    int a = q.vertex_index("a"), z = q.vertex_index("z");
    CHECK(ab.nilpotency_bound() == 2);
    CHECK(ab.pair_dimension(a, z) == 2);
    CHECK(ab.pair_dimension(a, a) == 1);
    CHECK(ab.pair_dimension(z, a) == 0);
    CHECK(ab.dimension() == 4);
    CHECK(ab.grading().empty());
}

TEST_CASE("C(1) algebra") {
    AlgebraBasis ab = build_algebra(model_C(1));
    CHECK(ab.nilpotency_bound() == 4);
    // e_a, alpha, rho.alpha, beta.alpha, beta.rho.alpha, e_m, rho, beta, beta.rho, e_z
    CHECK(ab.dimension() == 10);
    CHECK(basis_names(ab, "a", "z") == std::vector<std::string>{"beta.alpha", "beta.rho1.alpha"});
    CHECK(basis_names(ab, "m", "m") == std::vector<std::string>{"e_m", "rho1"});
    CHECK(basis_names(ab, "a", "m") == std::vector<std::string>{"alpha", "rho1.alpha"});
    CHECK(basis_names(ab, "m", "z") == std::vector<std::string>{"beta", "beta.rho1"});
    CHECK(ab.grading().size() == 3);
}

TEST_CASE("non-admissible loop") {
    CHECK_THROWS_AS(build_algebra(fixture("loop_nonadmissible")), AdmissibilityError);
    CHECK_THROWS_AS(build_algebra(model_C(1), 3), AdmissibilityError);
    CHECK_NOTHROW(build_algebra(model_C(1), 4));
}

TEST_CASE("reduce examples") {
    SUBCASE("B(2,2) relation vanishes") {
        BoundQuiver bq = model_B(2, 2);
        AlgebraBasis ab = build_algebra(bq);
        CHECK(ab.is_zero(ab.reduce(relation_terms(bq.relations().at(0)))));
        CHECK_FALSE(ab.is_zero(path_element(ab, "gamma2.gamma1")));
    }
    SUBCASE("C(p) relation vanishes") {
        for (int p = 1; p <= 4; ++p) {
            BoundQuiver bq = model_C(p);
            AlgebraBasis ab = build_algebra(bq);
            std::string rel = "rho1.rho" + std::to_string(p);
            CHECK(ab.is_zero(path_element(ab, rel)));
        }
    }
    SUBCASE("arrows are basis elements") {
        AlgebraBasis ab = build_algebra(model_D(1, 1));
        const Quiver& q = ab.quiver();
        for (int a = 0; a < q.arrow_count(); ++a) {
            Path p = Path::of_arrow(q, a);
            Element e = ab.reduce_path(p);
            const auto& basis = ab.basis(p.source, p.target);
            auto it = std::find(basis.begin(), basis.end(), p);
            REQUIRE(it != basis.end());
            std::size_t idx = static_cast<std::size_t>(it - basis.begin());
            for (std::size_t i = 0; i < e.coords.size(); ++i)
                CHECK(ab.field().equal(e.coords[i], i == idx ? ab.field().one() : ab.field().zero()));
        }
    }
    SUBCASE("D(1,1) identifies the gamma path with beta.alpha") {
        AlgebraBasis ab = build_algebra(model_D(1, 1));
        Element g = path_element(ab, "gamma2.gamma1");
        Element ba = path_element(ab, "beta.alpha");
        CHECK(ab.is_zero(ab.add(g, ab.scale(ba, ab.field().from_int(-1)))));
    }
}

TEST_CASE("layer profiles") {
    AlgebraBasis kr = build_algebra(fixture("kronecker"));
    const Quiver& k = kr.quiver();
    CHECK(layer_profile(kr, k.vertex_index("z"), k.vertex_index("a")).layers == std::vector<int>{2});
    CHECK(layer_profile(kr, k.vertex_index("a"), k.vertex_index("a")).layers == std::vector<int>{1});
    CHECK(layer_profile(kr, k.vertex_index("a"), k.vertex_index("z")).layers.empty());

    AlgebraBasis c1 = build_algebra(model_C(1));
    const Quiver& c = c1.quiver();
    CHECK(layer_profile(c1, c.vertex_index("z"), c.vertex_index("a")).layers == std::vector<int>{2});
    CHECK(layer_profile(c1, c.vertex_index("m"), c.vertex_index("m")).layers == std::vector<int>{1, 1});
}

TEST_CASE("distributivity examples") {
    CHECK(is_distributive(build_algebra(fixture("a2"))).distributive);
    for (int n = 1; n <= 5; ++n) CHECK(is_distributive(build_algebra(linear_A(n))).distributive);

    AlgebraBasis kr = build_algebra(fixture("kronecker"));
    DistributivityResult d = is_distributive(kr);
    CHECK_FALSE(d.distributive);
    REQUIRE(d.witness);
    CHECK(d.witness->f == kr.quiver().vertex_index("z"));
    CHECK(d.witness->e == kr.quiver().vertex_index("a"));
    CHECK(d.witness->layer == 0);

    for (const auto& bq : {model_A(1, 1), model_B(2, 2), model_C(1), model_D(1, 1), model_E(1, 1, 1)}) {
        DistributivityResult r = is_distributive(build_algebra(bq));
        CHECK_FALSE(r.distributive);
        CHECK(r.witness.has_value());
    }
    AlgebraBasis e = build_algebra(model_E(1, 1, 1));
    DistributivityResult re = is_distributive(e);
    CHECK(e.nilpotency_bound() == 3);
    CHECK(e.dimension() == 7);
    CHECK(re.witness->f == e.quiver().vertex_index("h2"));
    CHECK(re.witness->e == e.quiver().vertex_index("h1"));
    CHECK(re.witness->layer == 1);
}

TEST_CASE("minimal relation counts") {
    for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 1}}) CHECK(minimal_relation_count(build_algebra(model_A(p, q))).total == 0);
    CHECK(minimal_relation_count(build_algebra(model_B(2, 2))).total == 1);
    CHECK(minimal_relation_count(build_algebra(model_C(2))).total == 1);

    AlgebraBasis d = build_algebra(model_D(1, 1));
    RelationCount rd = minimal_relation_count(d);
    CHECK(rd.total == 2);
    const Quiver& q = d.quiver();
    int a = q.vertex_index("a"), m = q.vertex_index("m"), z = q.vertex_index("z");
    CHECK(rd.per_pair.at({m, m}) == 1);
    CHECK(rd.per_pair.at({a, z}) == 1);
    int supported = 0;
    for (const auto& [pair, c] : rd.per_pair) supported += c > 0;
    CHECK(supported == 2);

    RelationCount re = minimal_relation_count(build_algebra(model_E(1, 1, 1)));
    CHECK(re.total == 3);
    CHECK(re.minimal_subset.size() == 3);

    // a redundant generator is not counted
    BoundQuiver c1 = model_C(1);
    std::vector<Relation> rels = c1.relations();
    rels.push_back(make_relation(c1.quiver(), c1.field(), {{1, "rho1.rho1.alpha"}}));
    AlgebraBasis redundant = build_algebra(BoundQuiver::make(c1.quiver(), rels, c1.field()));
    RelationCount rr = minimal_relation_count(redundant);
    CHECK(rr.total == 1);
    CHECK(rr.minimal_subset == std::vector<std::size_t>{0});
}

TEST_CASE("property: reduction invariants") {
    for (const auto& bq : small_models()) {
        AlgebraBasis ab = build_algebra(bq);
        const Quiver& q = ab.quiver();
        const Field& f = ab.field();
        int n = ab.nilpotency_bound();
        // relations vanish, also inside longer paths
        for (const auto& r : bq.relations()) {
            CHECK(ab.is_zero(ab.reduce(r.terms)));
            for (int x = 0; x < q.vertex_count(); ++x)
                for (const auto& pre : enumerate_paths(q, x, r.source, 2))
                    for (int y = 0; y < q.vertex_count(); ++y)
                        for (const auto& post : enumerate_paths(q, r.target, y, 2)) {
                            std::vector<Term> wrapped;
                            for (const auto& t : r.terms) wrapped.push_back({t.coefficient, post.after(t.path.after(pre))});
                            CHECK(ab.is_zero(ab.reduce(wrapped)));
                        }
        }
        for (int x = 0; x < q.vertex_count(); ++x)
            for (int y = 0; y < q.vertex_count(); ++y) {
                // paths of length >= N vanish
                for (const auto& p : enumerate_paths(q, x, y, n + 1))
                    if (p.length() >= n) CHECK(ab.is_zero(ab.reduce_path(p)));
                // reduce is idempotent on basis elements and multiplicative
                for (std::size_t i = 0; i < ab.basis(x, y).size(); ++i) {
                    Element b = ab.basis_element(x, y, i);
                    Element again = ab.reduce_path(ab.basis(x, y)[i]);
                    CHECK(ab.is_zero(ab.add(b, ab.scale(again, f.from_int(-1)))));
                }
                for (const auto& p : enumerate_paths(q, x, y, std::min(n, 4)))
                    for (int w = 0; w < q.vertex_count(); ++w)
                        for (const auto& s : enumerate_paths(q, y, w, 2)) {
                            Element whole = ab.reduce_path(s.after(p));
                            Element prod = ab.multiply(ab.reduce_path(s), ab.reduce_path(p));
                            CHECK(ab.is_zero(ab.add(whole, ab.scale(prod, f.from_int(-1)))));
                        }
            }
    }
}

TEST_CASE("property: basis agrees with the dense all-paths oracle") {
    std::vector<BoundQuiver> cases = small_models();
    std::mt19937_64 rng(3);
    for (auto& bq : random_distributive(rng, 10)) cases.push_back(bq);
    for (const auto& bq : cases) {
        AlgebraBasis ab = build_algebra(bq);
        if (ab.dimension() > 40) continue;
        int total = 0;
        for (int x = 0; x < ab.quiver().vertex_count(); ++x)
            for (int y = 0; y < ab.quiver().vertex_count(); ++y) {
                int dense = dense_pair_dim(bq, ab.nilpotency_bound(), x, y);
                CHECK(dense == ab.pair_dimension(x, y));
                total += dense;
            }
        CHECK(total == ab.dimension());
        // N is the smallest bound: some path of length N-1 survives
        bool survivor = false;
        for (int x = 0; x < ab.quiver().vertex_count(); ++x)
            for (const auto& p : paths_from(ab.quiver(), x, ab.nilpotency_bound() - 1))
                if (p.length() == ab.nilpotency_bound() - 1 && !ab.is_zero(ab.reduce_path(p))) survivor = true;
        CHECK(survivor);
    }
}

TEST_CASE("property: distributive algebras have uniserial local rings and cyclic pair spaces") {
    std::mt19937_64 rng(17);
    std::vector<BoundQuiver> cases = random_distributive(rng, 25);
    for (int n = 1; n <= 5; ++n) cases.push_back(linear_A(n));
    cases.push_back(fixture("glued_a11").with_field(Field::prime(3)));  // not distributive, filtered below
    for (const auto& bq : cases) {
        AlgebraBasis ab = build_algebra(bq);
        if (!is_distributive(ab).distributive) continue;
        int nv = ab.quiver().vertex_count();
        for (int x = 0; x < nv; ++x) {
            auto prof = layer_profile(ab, x, x).layers;
            for (int d : prof) CHECK(d == 1);
        }
        for (int x = 0; x < nv; ++x)
            for (int y = 0; y < nv; ++y)
                if (ab.pair_dimension(x, y) > 0) CHECK((is_cyclic_left(ab, x, y) || is_cyclic_right(ab, x, y)));
    }
}

TEST_CASE("property: adding a monomial relation keeps distributivity") {
    std::mt19937_64 rng(23);
    int checked = 0;
    for (const auto& bq : random_distributive(rng, 30)) {
        const Quiver& q = bq.quiver();
        std::vector<Path> candidates;
        for (int x = 0; x < q.vertex_count(); ++x)
            for (const auto& p : paths_from(q, x, 3))
                if (p.length() >= 2) candidates.push_back(p);
        if (candidates.empty()) continue;
        const Path& extra = candidates[rng() % candidates.size()];
        std::vector<Relation> rels = bq.relations();
        rels.push_back(Relation{{Term{bq.field().one(), extra}}, extra.source, extra.target});
        AlgebraBasis ab = build_algebra(BoundQuiver::make(q, rels, bq.field()));
        CHECK(is_distributive(ab).distributive);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("radical indices and gradings") {
    AlgebraBasis c2 = build_algebra(model_C(2));
    int m = c2.quiver().vertex_index("m");
    auto rad = c2.radical_indices(m);
    CHECK(rad.size() + 1 == c2.basis(m, m).size());
    auto g = homogenizing_grading(model_D(1, 1));
    REQUIRE(g.has_value());
    for (const auto& w : *g) CHECK(w > 0);
}
