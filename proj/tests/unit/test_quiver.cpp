#include <doctest.h>

#include "support.hpp"
#include "tauq/errors.hpp"
#include "tauq/models.hpp"

using namespace tauq;
using namespace tauq::test;

namespace {

std::vector<std::string> formatted(const Quiver& q, const std::vector<Path>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(format_path(q, p));
    return out;
}

}  // namespace

TEST_CASE("field arithmetic over F_p and Q") {
    Field f = Field::parse("F5");
    CHECK(f.is_finite());
    CHECK(f.characteristic() == 5);
    CHECK(f.residue(f.from_int(-3)) == 2);
    CHECK(f.residue(f.inv(f.from_int(2))) == 3);
    CHECK(f.name() == "F5");
    Field q = Field::parse("Q");
    CHECK(q.is_rational());
    CHECK(q.format(q.div(q.from_int(3), q.from_int(6))) == "1/2");
    CHECK_THROWS_AS(Field::parse("F4"), PreconditionError);
    CHECK_THROWS_AS(Field::parse("R"), PreconditionError);
    CHECK_THROWS_AS(parse("field F4\nvertex x\n"), ParseError);
    CHECK_THROWS(f.inv(f.zero()));
}

TEST_CASE("parse: one vertex, nothing else") {
    BoundQuiver bq = parse("vertex x\n");
    CHECK(bq.quiver().vertex_count() == 1);
    CHECK(bq.quiver().arrow_count() == 0);
    CHECK(bq.relations().empty());
    CHECK(bq.field().is_rational());
}

TEST_CASE("parse: Kronecker") {
    BoundQuiver bq = parse("# comment\nvertex a z\narrow alpha : a -> z\narrow beta : a -> z   # trailing\n");
    const Quiver& q = bq.quiver();
    CHECK(q.vertex_count() == 2);
    CHECK(q.arrow_count() == 2);
    CHECK(q.arrow(q.arrow_index("alpha")).source == q.vertex_index("a"));
    CHECK(q.arrow(q.arrow_index("beta")).target == q.vertex_index("z"));
    CHECK(bq.relations().empty());
}

TEST_CASE("parse errors") {
    SUBCASE("non-uniform relation") {
        CHECK_THROWS_AS(parse("vertex a m z\narrow al : a -> m\narrow be : m -> z\narrow ga : a -> z\narrow de : z -> m\n"
                              "rel be.al + de.ga\nrel be.al + ga.ga\n"),
                        ParseError);
        CHECK_THROWS_AS(parse("vertex a m z\narrow al : a -> m\narrow be : m -> z\narrow ga : z -> m\n"
                              "rel be.al + ga.be.al\n"),
                        ParseError);
    }
    SUBCASE("short path") {
        CHECK_THROWS_AS(parse("vertex a z\narrow al : a -> z\nrel al\n"), ParseError);
    }
    SUBCASE("unknown ids") {
        CHECK_THROWS_AS(parse("vertex a\narrow al : a -> b\n"), ParseError);
        CHECK_THROWS_AS(parse("vertex a b\narrow al : a -> b\nrel al.xi\n"), ParseError);
    }
    SUBCASE("duplicate ids") {
        CHECK_THROWS_AS(parse("vertex a a\n"), ParseError);
        CHECK_THROWS_AS(parse("vertex a b\narrow al : a -> b\narrow al : a -> b\n"), ParseError);
    }
    SUBCASE("disconnected") {
        CHECK_THROWS_AS(parse("vertex a b\n"), ParseError);
        CHECK_NOTHROW(parse_bound_quiver("vertex a b\n", ParseOptions{true}));
    }
    SUBCASE("syntax error carries a position") {
        try {
            parse("vertex a z\narrow alpha a -> z\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() > 0);
        }
    }
    SUBCASE("unknown keyword") { CHECK_THROWS_AS(parse("vertx a\n"), ParseError); }
    SUBCASE("non-composable path") {
        CHECK_THROWS_AS(parse("vertex a m z\narrow al : a -> m\narrow be : m -> z\nrel al.be\n"), ParseError);
    }
}

TEST_CASE("parse: coefficients reduce into the declared field") {
    const char* text = "field F5\nvertex a m z\narrow al : a -> m\narrow be : m -> z\narrow ga : a -> z\n"
                       "arrow de : a -> z\narrow x : z -> z\nrel 7*x.ga - 3*x.de\n";
    BoundQuiver bq = parse(text);
    REQUIRE(bq.relations().size() == 1);
    const Relation& r = bq.relations()[0];
    REQUIRE(r.terms.size() == 2);
    // 7 = 2 and -3 = 2 in F5
    for (const auto& t : r.terms) CHECK(bq.field().residue(t.coefficient) == 2);
    // like terms merge; a relation that cancels is rejected
    CHECK_THROWS_AS(parse("field F5\nvertex a z\narrow g : a -> z\narrow x : z -> z\nrel 5*x.g\n"), ParseError);
    CHECK_THROWS_AS(parse("vertex a z\narrow g : a -> z\narrow x : z -> z\nrel x.g - x.g\n"), ParseError);
}

TEST_CASE("enumerate_paths examples") {
    BoundQuiver kr = fixture("kronecker");
    const Quiver& k = kr.quiver();
    CHECK(formatted(k, enumerate_paths(k, k.vertex_index("a"), k.vertex_index("z"), 3)) ==
          std::vector<std::string>{"alpha", "beta"});

    Quiver loop = Quiver::make({"x"}, {{"rho", "x", "x"}});
    CHECK(formatted(loop, enumerate_paths(loop, 0, 0, 2)) == std::vector<std::string>{"e_x", "rho", "rho.rho"});

    BoundQuiver c1 = model_C(1);
    const Quiver& c = c1.quiver();
    CHECK(formatted(c, enumerate_paths(c, c.vertex_index("a"), c.vertex_index("z"), 3)) ==
          std::vector<std::string>{"beta.alpha", "beta.rho1.alpha"});
}

TEST_CASE("sources and sinks") {
    for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {4, 1}}) {
        BoundQuiver bq = model_A(p, q);
        const Quiver& g = bq.quiver();
        SourcesSinks ss = sources_sinks(g);
        CHECK(ss.sources == std::vector<int>{g.vertex_index("a")});
        CHECK(ss.sinks == std::vector<int>{g.vertex_index("z")});
    }
    SourcesSinks two_loops = sources_sinks(fixture("glued_a11").quiver());
    CHECK(two_loops.sources.empty());
    CHECK(two_loops.sinks.empty());
    SourcesSinks lone = sources_sinks(parse("vertex x\n").quiver());
    CHECK(lone.sources == std::vector<int>{0});
    CHECK(lone.sinks == std::vector<int>{0});
}

TEST_CASE("path composition and parsing") {
    BoundQuiver c1 = model_C(1);
    const Quiver& q = c1.quiver();
    Path p = parse_path(q, "beta.rho1.alpha");
    CHECK(p.length() == 3);
    CHECK(p.source == q.vertex_index("a"));
    CHECK(p.target == q.vertex_index("z"));
    CHECK(p.arrows.front() == q.arrow_index("alpha"));
    CHECK(p.passes_through(q, q.vertex_index("m")));
    CHECK_FALSE(p.passes_through(q, q.vertex_index("a")));
    Path left = parse_path(q, "beta.rho1");
    Path right = parse_path(q, "alpha");
    CHECK(left.after(right) == p);
    CHECK(path_less(right, left));
    CHECK_THROWS_AS(parse_path(q, "alpha.beta"), PreconditionError);
    CHECK_THROWS_AS(parse_path(q, "nope"), PreconditionError);
}

TEST_CASE("property: enumerate_paths(m) is the prefix of enumerate_paths(m+1)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Quiver q = random_quiver(rng, 2 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 4), false);
        for (int x = 0; x < q.vertex_count(); ++x)
            for (int y = 0; y < q.vertex_count(); ++y)
                for (int m = 0; m < 4; ++m) {
                    auto small = enumerate_paths(q, x, y, m);
                    auto big = enumerate_paths(q, x, y, m + 1);
                    std::vector<Path> cut;
                    for (const auto& p : big)
                        if (p.length() <= m) cut.push_back(p);
                    REQUIRE(small == cut);
                    for (std::size_t i = 0; i + 1 < big.size(); ++i) CHECK(path_less(big[i], big[i + 1]));
                    for (const auto& p : big) {
                        CHECK(p.source == x);
                        CHECK(p.target == y);
                        CHECK((p.length() == 0) == (p.arrows.empty()));
                        int at = x;
                        for (int a : p.arrows) {
                            CHECK(q.arrow(a).source == at);
                            at = q.arrow(a).target;
                        }
                        CHECK(at == y);
                    }
                    bool has_trivial = !small.empty() && small.front().length() == 0;
                    CHECK(has_trivial == (x == y));
                }
    }
}

TEST_CASE("property: parse . serialize is the identity") {
    const char* names[] = {"a11", "a23", "b22", "b22_signed", "c1", "c1_renamed", "c3", "d22", "e213",
                           "glued_a11", "glued_d11", "atilde3", "barbell", "kronecker_pendant", "doubly_glued"};
    for (const char* n : names) {
        BoundQuiver bq = fixture(n);
        std::string text = serialize_bound_quiver(bq);
        BoundQuiver back = parse(text);
        CHECK(back == bq);
        CHECK(serialize_bound_quiver(back) == text);
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Field f = trial % 2 ? Field::prime(7) : Field::rationals();
        Quiver q = random_quiver(rng, 2 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 3), true);
        std::vector<Relation> rels;
        // one random relation per length-2 parallel class found
        for (int x = 0; x < q.vertex_count(); ++x)
            for (int y = 0; y < q.vertex_count(); ++y) {
                std::vector<Term> terms;
                for (const auto& p : enumerate_paths(q, x, y, 3))
                    if (p.length() >= 2 && rng() % 2) terms.push_back({f.from_int(1 + static_cast<long>(rng() % 5)), p});
                if (!terms.empty()) rels.push_back(Relation{terms, x, y});
            }
        BoundQuiver bq = BoundQuiver::make(q, rels, f);
        BoundQuiver back = parse(serialize_bound_quiver(bq));
        CHECK(back == bq);
    }
}
