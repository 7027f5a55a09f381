#include "tauq/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tauq/errors.hpp"

namespace tauq {

// ---------------------------------------------------------------- Quiver

Quiver Quiver::make(std::vector<std::string> vertices, std::vector<ArrowSpec> arrows) {
    Quiver q;
    std::sort(vertices.begin(), vertices.end());
    if (auto it = std::adjacent_find(vertices.begin(), vertices.end()); it != vertices.end())
        throw ParseError("duplicate vertex '" + *it + "'");
    q.vertices_ = std::move(vertices);
    std::sort(arrows.begin(), arrows.end(), [](const ArrowSpec& a, const ArrowSpec& b) { return a.name < b.name; });
    for (std::size_t i = 1; i < arrows.size(); ++i)
        if (arrows[i].name == arrows[i - 1].name) throw ParseError("duplicate arrow '" + arrows[i].name + "'");
    q.in_.assign(q.vertices_.size(), {});
    q.out_.assign(q.vertices_.size(), {});
    for (const auto& spec : arrows) {
        auto s = q.find_vertex(spec.source);
        auto t = q.find_vertex(spec.target);
        if (!s) throw ParseError("arrow '" + spec.name + "' uses unknown vertex '" + spec.source + "'");
        if (!t) throw ParseError("arrow '" + spec.name + "' uses unknown vertex '" + spec.target + "'");
        int idx = static_cast<int>(q.arrows_.size());
        q.arrows_.push_back(Arrow{spec.name, *s, *t});
        q.out_[*s].push_back(idx);
        q.in_[*t].push_back(idx);
    }
    return q;
}

std::optional<int> Quiver::find_vertex(std::string_view name) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end() || *it != name) return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
}

std::optional<int> Quiver::find_arrow(std::string_view name) const {
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), name,
                               [](const Arrow& a, std::string_view n) { return a.name < n; });
    if (it == arrows_.end() || it->name != name) return std::nullopt;
    return static_cast<int>(it - arrows_.begin());
}

int Quiver::vertex_index(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw PreconditionError("unknown vertex '" + std::string(name) + "'");
}

int Quiver::arrow_index(std::string_view name) const {
    if (auto a = find_arrow(name)) return *a;
    throw PreconditionError("unknown arrow '" + std::string(name) + "'");
}

std::vector<std::vector<int>> Quiver::components() const {
    std::vector<int> parent(vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : arrows_) parent[find(a.source)] = find(a.target);
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < vertex_count(); ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

bool Quiver::has_oriented_cycle() const {
    // Kahn's algorithm: a cycle remains iff some vertex is never freed.
    std::vector<int> indeg(vertices_.size(), 0);
    for (const auto& a : arrows_) ++indeg[a.target];
    std::vector<int> stack;
    for (int v = 0; v < vertex_count(); ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int a : out_[v])
            if (--indeg[arrows_[a].target] == 0) stack.push_back(arrows_[a].target);
    }
    return seen != vertex_count();
}

bool operator==(const Quiver& a, const Quiver& b) {
    if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
    for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
        const auto &x = a.arrows_[i], &y = b.arrows_[i];
        if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
    }
    return true;
}

// ---------------------------------------------------------------- Path

Path Path::of_arrow(const Quiver& q, int a) { return Path{q.arrow(a).source, q.arrow(a).target, {a}}; }

bool Path::passes_through(const Quiver& q, int v) const {
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (q.arrow(arrows[i]).target == v) return true;
    return false;
}

Path Path::after(const Path& rhs) const {
    Path p{rhs.source, target, rhs.arrows};
    p.arrows.insert(p.arrows.end(), arrows.begin(), arrows.end());
    return p;
}

bool path_less(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
}

std::string format_path(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vertex_name(p.source);
    std::string out;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        if (!out.empty()) out += '.';
        out += q.arrow(*it).name;
    }
    return out;
}

Path parse_path(const Quiver& q, std::string_view text) {
    std::vector<int> written;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t dot = text.find('.', start);
        std::string_view name = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        written.push_back(q.arrow_index(name));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    Path p;
    p.arrows.assign(written.rbegin(), written.rend());
    p.source = q.arrow(p.arrows.front()).source;
    p.target = q.arrow(p.arrows.back()).target;
    for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
        if (q.arrow(p.arrows[i]).target != q.arrow(p.arrows[i + 1]).source)
            throw PreconditionError("path '" + std::string(text) + "' is not composable");
    return p;
}

int Relation::min_length() const {
    int m = terms.front().path.length();
    for (const auto& t : terms) m = std::min(m, t.path.length());
    return m;
}

int Relation::max_length() const {
    int m = 0;
    for (const auto& t : terms) m = std::max(m, t.path.length());
    return m;
}

std::string format_relation(const Quiver& q, const Field& f, const Relation& r) {
    std::string out;
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const auto& t = r.terms[i];
        Scalar c = t.coefficient;
        bool negative = false;
        if (f.is_rational() && f.to_rational(c) < 0) {
            negative = true;
            c = f.neg(c);
        }
        if (i == 0)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (!f.is_one(c)) out += f.format(c) + "*";
        out += format_path(q, t.path);
    }
    return out;
}

// ---------------------------------------------------------------- BoundQuiver

namespace {

void normalize_relation(const Quiver& q, const Field& f, Relation& r) {
    std::vector<Term> merged;
    for (auto& t : r.terms) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Term& m) { return m.path == t.path; });
        if (it != merged.end())
            it->coefficient = f.add(it->coefficient, t.coefficient);
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [&](const Term& t) { return f.is_zero(t.coefficient); });
    r.terms = std::move(merged);
    if (r.terms.empty()) throw ParseError("relation vanishes over " + f.name());
    r.source = r.terms.front().path.source;
    r.target = r.terms.front().path.target;
    for (const auto& t : r.terms) {
        if (t.path.source != r.source || t.path.target != r.target)
            throw ParseError("non-uniform relation '" + format_relation(q, f, r) + "': paths are not parallel");
        if (t.path.length() < 2)
            throw ParseError("relation '" + format_relation(q, f, r) + "' contains a path of length < 2");
    }
}

}  // namespace

BoundQuiver BoundQuiver::make(Quiver q, std::vector<Relation> relations, Field field, bool require_connected) {
    if (q.vertex_count() == 0) throw ParseError("quiver has no vertices");
    if (require_connected && !q.is_connected()) throw ParseError("quiver is disconnected");
    for (auto& r : relations) normalize_relation(q, field, r);
    BoundQuiver bq;
    bq.quiver_ = std::move(q);
    bq.relations_ = std::move(relations);
    bq.field_ = field;
    return bq;
}

BoundQuiver BoundQuiver::with_field(Field f) const {
    std::vector<Relation> rels = relations_;
    for (auto& r : rels)
        for (auto& t : r.terms) t.coefficient = f.from_rational(field_.to_rational(t.coefficient));
    return make(quiver_, std::move(rels), f, false);
}

BoundQuiver BoundQuiver::restricted_to(const std::vector<int>& vertices) const {
    std::set<int> keep(vertices.begin(), vertices.end());
    std::vector<std::string> names;
    for (int v : keep) names.push_back(quiver_.vertex_name(v));
    std::vector<Quiver::ArrowSpec> specs;
    for (const auto& a : quiver_.arrows()) {
        bool s = keep.count(a.source), t = keep.count(a.target);
        if (s != t) throw PreconditionError("vertex subset is not closed under arrows");
        if (s) specs.push_back({a.name, quiver_.vertex_name(a.source), quiver_.vertex_name(a.target)});
    }
    Quiver sub = Quiver::make(std::move(names), std::move(specs));
    std::vector<Relation> rels;
    for (const auto& r : relations_) {
        if (!keep.count(r.source)) continue;
        Relation nr;
        for (const auto& t : r.terms) {
            Path p;
            for (int a : t.path.arrows) p.arrows.push_back(sub.arrow_index(quiver_.arrow(a).name));
            p.source = sub.vertex_index(quiver_.vertex_name(t.path.source));
            p.target = sub.vertex_index(quiver_.vertex_name(t.path.target));
            nr.terms.push_back({t.coefficient, std::move(p)});
        }
        rels.push_back(std::move(nr));
    }
    return make(std::move(sub), std::move(rels), field_, false);
}

bool operator==(const BoundQuiver& a, const BoundQuiver& b) {
    if (!(a.field_ == b.field_) || !(a.quiver_ == b.quiver_) || a.relations_.size() != b.relations_.size())
        return false;
    for (std::size_t i = 0; i < a.relations_.size(); ++i) {
        const auto &x = a.relations_[i], &y = b.relations_[i];
        if (x.terms.size() != y.terms.size()) return false;
        for (std::size_t j = 0; j < x.terms.size(); ++j)
            if (!(x.terms[j].path == y.terms[j].path) ||
                !a.field_.equal(x.terms[j].coefficient, y.terms[j].coefficient))
                return false;
    }
    return true;
}

Relation make_relation(const Quiver& q, const Field& f, const std::vector<std::pair<long, std::string>>& terms) {
    Relation r;
    for (const auto& [c, text] : terms) r.terms.push_back({f.from_int(c), parse_path(q, text)});
    normalize_relation(q, f, r);
    return r;
}

// ---------------------------------------------------------------- .bq parser

namespace {

class LineLexer {
public:
    LineLexer(std::string_view line, int lineno) : s_(line), line_(lineno) {}

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_space();
        return pos_ >= s_.size();
    }
    int column() const { return static_cast<int>(pos_) + 1; }
    char peek() {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(std::string_view tok) {
        skip_space();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, column()); }

    static bool arrow_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    std::string arrow_id() {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            while (pos_ < s_.size() && arrow_char(s_[pos_])) ++pos_;
        }
        if (pos_ == start) fail("expected arrow identifier");
        return std::string(s_.substr(start, pos_ - start));
    }

    // Vertex ids may carry '+'/'-' (resolved nodes are named x+ and x-), but
    // never swallow the "->" token.
    std::string vertex_id() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') break;
            if (arrow_char(c) || c == '+' || c == '-') {
                ++pos_;
                continue;
            }
            break;
        }
        if (pos_ == start) fail("expected vertex identifier");
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string word() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    mpq_class number() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer coefficient");
        mpz_class num(std::string(s_.substr(start, pos_ - start)));
        mpz_class den = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == ds) fail("expected denominator");
            den = mpz_class(std::string(s_.substr(ds, pos_ - ds)));
            if (den == 0) fail("zero denominator");
        }
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    int line_;
};

struct RawTerm {
    mpq_class coefficient;
    std::vector<std::string> written;  // arrow ids, leftmost = last applied
    int line;
    int column;
};

struct RawRelation {
    std::vector<RawTerm> terms;
    int line;
};

}  // namespace

BoundQuiver parse_bound_quiver(std::string_view text, ParseOptions options) {
    std::vector<std::string> vertices;
    std::vector<Quiver::ArrowSpec> arrows;
    std::vector<std::pair<int, int>> arrow_pos;
    std::vector<RawRelation> raw;
    std::optional<Field> field;
    std::set<std::string> declared;

    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        LineLexer lx(line, lineno);
        if (lx.at_end()) continue;
        int kw_col = lx.column();
        std::string kw = lx.word();
        if (kw == "field") {
            if (field) lx.fail("field declared twice");
            std::string name = lx.word();
            try {
                field = Field::parse(name);
            } catch (const PreconditionError& e) {
                throw ParseError(e.what(), lineno, kw_col);
            }
        } else if (kw == "vertex") {
            if (lx.at_end()) lx.fail("expected vertex identifier");
            while (!lx.at_end()) {
                int col = lx.column();
                std::string v = lx.vertex_id();
                if (!declared.insert(v).second) throw ParseError("duplicate vertex '" + v + "'", lineno, col);
                vertices.push_back(v);
            }
        } else if (kw == "arrow") {
            int col = lx.column();
            std::string name = lx.arrow_id();
            lx.expect(":");
            int scol = lx.column();
            std::string s = lx.vertex_id();
            lx.expect("->");
            int tcol = lx.column();
            std::string t = lx.vertex_id();
            if (!lx.at_end()) lx.fail("unexpected trailing input");
            if (!declared.count(s)) throw ParseError("unknown vertex '" + s + "'", lineno, scol);
            if (!declared.count(t)) throw ParseError("unknown vertex '" + t + "'", lineno, tcol);
            for (const auto& a : arrows)
                if (a.name == name) throw ParseError("duplicate arrow '" + name + "'", lineno, col);
            arrows.push_back({name, s, t});
        } else if (kw == "rel") {
            RawRelation rel{{}, lineno};
            bool first = true;
            while (!lx.at_end()) {
                int sign = 1;
                if (lx.accept("+")) {
                } else if (lx.accept("-")) {
                    sign = -1;
                } else if (!first) {
                    lx.fail("expected '+' or '-'");
                }
                RawTerm term{mpq_class(sign), {}, lineno, lx.column()};
                if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
                    term.coefficient *= lx.number();
                    lx.expect("*");
                }
                term.written.push_back(lx.arrow_id());
                while (lx.accept(".")) term.written.push_back(lx.arrow_id());
                rel.terms.push_back(std::move(term));
                first = false;
            }
            if (rel.terms.empty()) lx.fail("empty relation");
            raw.push_back(std::move(rel));
        } else {
            throw ParseError("unknown declaration '" + kw + "'", lineno, kw_col);
        }
    }

    Field f = field.value_or(Field::rationals());
    Quiver q = Quiver::make(vertices, arrows);
    std::vector<Relation> relations;
    for (const auto& rr : raw) {
        Relation r;
        for (const auto& t : rr.terms) {
            Path p;
            for (auto it = t.written.rbegin(); it != t.written.rend(); ++it) {
                auto a = q.find_arrow(*it);
                if (!a) throw ParseError("unknown arrow '" + *it + "'", t.line, t.column);
                p.arrows.push_back(*a);
            }
            p.source = q.arrow(p.arrows.front()).source;
            p.target = q.arrow(p.arrows.back()).target;
            for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
                if (q.arrow(p.arrows[i]).target != q.arrow(p.arrows[i + 1]).source)
                    throw ParseError("path is not composable", t.line, t.column);
            Scalar c;
            try {
                c = f.from_rational(t.coefficient);
            } catch (const PreconditionError& e) {
                throw ParseError(e.what(), t.line, t.column);
            }
            r.terms.push_back({c, std::move(p)});
        }
        try {
            normalize_relation(q, f, r);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), rr.line, 1);
        }
        relations.push_back(std::move(r));
    }
    return BoundQuiver::make(std::move(q), std::move(relations), f, !options.allow_disconnected);
}

std::string serialize_bound_quiver(const BoundQuiver& bq) {
    const Quiver& q = bq.quiver();
    std::ostringstream os;
    os << "field " << bq.field().name() << '\n';
    os << "vertex";
    for (const auto& v : q.vertices()) os << ' ' << v;
    os << '\n';
    for (const auto& a : q.arrows())
        os << "arrow " << a.name << " : " << q.vertex_name(a.source) << " -> " << q.vertex_name(a.target) << '\n';
    for (const auto& r : bq.relations()) os << "rel " << format_relation(q, bq.field(), r) << '\n';
    return os.str();
}

// ---------------------------------------------------------------- paths

std::vector<Path> paths_from(const Quiver& q, int from, int max_len) {
    std::vector<Path> out{Path::trivial(from)};
    std::size_t layer_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (int a : q.outgoing(out[i].target)) {
                Path p = out[i];
                p.arrows.push_back(a);
                p.target = q.arrow(a).target;
                out.push_back(std::move(p));
            }
        }
        if (out.size() == layer_end) break;
        layer_begin = layer_end;
    }
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

std::vector<Path> enumerate_paths(const Quiver& q, int from, int to, int max_len) {
    std::vector<Path> out;
    for (auto& p : paths_from(q, from, max_len))
        if (p.target == to) out.push_back(std::move(p));
    return out;
}

SourcesSinks sources_sinks(const Quiver& q) {
    SourcesSinks out;
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (q.is_source(v)) out.sources.push_back(v);
        if (q.is_sink(v)) out.sinks.push_back(v);
    }
    return out;
}

}  // namespace tauq
