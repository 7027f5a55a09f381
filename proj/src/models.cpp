#include "tauq/models.hpp"

#include "tauq/errors.hpp"

namespace tauq {

namespace {

struct Builder {
    std::vector<std::string> vertices;
    std::vector<Quiver::ArrowSpec> arrows;
    std::vector<std::vector<std::pair<long, std::string>>> rels;

    void vertex(std::string v) { vertices.push_back(std::move(v)); }
    void arrow(std::string n, std::string s, std::string t) { arrows.push_back({std::move(n), std::move(s), std::move(t)}); }

    // Path from s to t through fresh vertices prefix1..prefix{len-1}; arrows
    // name1..name{len}. Returns the right-to-left word.
    std::string arm(const std::string& name, const std::string& prefix, const std::string& s, const std::string& t,
                    int len) {
        std::string prev = s, word;
        for (int i = 1; i <= len; ++i) {
            std::string next = i == len ? t : prefix + std::to_string(i);
            if (i < len) vertex(next);
            arrow(name + std::to_string(i), prev, next);
            word = name + std::to_string(i) + (word.empty() ? "" : "." + word);
            prev = next;
        }
        return word;
    }

    BoundQuiver build(const Field& f) {
        Quiver q = Quiver::make(vertices, arrows);
        std::vector<Relation> rs;
        for (const auto& r : rels) rs.push_back(make_relation(q, f, r));
        return BoundQuiver::make(std::move(q), std::move(rs), f);
    }
};

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

// Cycle name1..name{len} based at hub; relation name1.name{len}.
void cycle(Builder& b, const std::string& name, const std::string& prefix, const std::string& hub, int len) {
    b.arm(name, prefix, hub, hub, len);
    b.rels.push_back({{1, name + "1." + name + std::to_string(len)}});
}

}  // namespace

BoundQuiver model_A(int p, int q, Field f) {
    require(p >= 1 && q >= 1, "A(p,q) needs p, q >= 1");
    Builder b;
    b.vertex("a");
    b.vertex("z");
    b.arm("alpha", "x", "a", "z", p);
    b.arm("beta", "y", "a", "z", q);
    return b.build(f);
}

BoundQuiver model_B(int p, int q, Field f) {
    require(p >= 2 && q >= 2, "B(p,q) needs p, q >= 2");
    Builder b;
    b.vertex("a");
    b.vertex("z");
    b.vertex("g");
    std::string wa = b.arm("alpha", "x", "a", "z", p);
    std::string wb = b.arm("beta", "y", "a", "z", q);
    b.arrow("gamma1", "a", "g");
    b.arrow("gamma2", "g", "z");
    b.rels.push_back({{1, "gamma2.gamma1"}, {1, wb}, {1, wa}});
    return b.build(f);
}

namespace {

void c_part(Builder& b, int p) {
    b.vertex("a");
    b.vertex("m");
    b.vertex("z");
    b.arrow("alpha", "a", "m");
    b.arrow("beta", "m", "z");
    cycle(b, "rho", "c", "m", p);
}

}  // namespace

BoundQuiver model_C(int p, Field f) {
    require(p >= 1, "C(p) needs p >= 1");
    Builder b;
    c_part(b, p);
    return b.build(f);
}

BoundQuiver model_D(int p, int q, Field f) {
    require(p >= 1 && q >= 1, "D(p,q) needs p, q >= 1");
    Builder b;
    c_part(b, p);
    std::string wg = b.arm("gamma", "g", "a", "z", q + 1);
    b.rels.push_back({{1, wg}, {-1, "beta.alpha"}});
    return b.build(f);
}

BoundQuiver model_E(int p, int q, int r, Field f) {
    require(p >= 1 && q >= 1 && r >= 1, "E(p,q,r) needs p, q, r >= 1");
    Builder b;
    b.vertex("h1");
    b.vertex("h2");
    cycle(b, "alpha", "s", "h1", p);
    cycle(b, "gamma", "t", "h2", q);
    std::string wt = b.arm("theta", "b", "h1", "h2", r);
    b.rels.push_back({{1, "gamma1." + wt + ".alpha" + std::to_string(p)}});
    return b.build(f);
}

BoundQuiver linear_A(int n, Field f) {
    require(n >= 1, "A_n needs n >= 1");
    Builder b;
    for (int i = 1; i <= n; ++i) b.vertex("v" + std::to_string(i));
    for (int i = 1; i < n; ++i) b.arrow("a" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1));
    return b.build(f);
}

BoundQuiver acyclic_Atilde(const std::vector<bool>& forward, Field f) {
    int n = static_cast<int>(forward.size());
    require(n >= 2, "acyclic Atilde_m needs m >= 1");
    bool all_same = true;
    for (bool x : forward) all_same = all_same && x == forward[0];
    require(!all_same, "acyclic Atilde_m needs a non-cyclic orientation");
    Builder b;
    for (int i = 0; i < n; ++i) b.vertex("w" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        std::string s = "w" + std::to_string(i), t = "w" + std::to_string((i + 1) % n);
        if (forward[i])
            b.arrow("e" + std::to_string(i), s, t);
        else
            b.arrow("e" + std::to_string(i), t, s);
    }
    return b.build(f);
}

BoundQuiver barbell_loops(Field f) {
    Builder b;
    for (const char* v : {"x", "w", "y"}) b.vertex(v);
    b.arrow("alpha", "x", "x");
    b.arrow("delta", "y", "y");
    b.arrow("l", "w", "x");
    b.arrow("r", "w", "y");
    b.rels.push_back({{1, "alpha.alpha"}});
    b.rels.push_back({{1, "delta.delta"}});
    return b.build(f);
}

}  // namespace tauq
