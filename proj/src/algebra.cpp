#include "tauq/algebra.hpp"

#include <algorithm>
#include <set>

#include "tauq/errors.hpp"

namespace tauq {

namespace {

constexpr std::size_t kPathBudget = 200000;

// Paths of length < K from every vertex, grouped by start vertex.
std::vector<std::vector<Path>> bounded_paths(const Quiver& q, int K) {
    std::vector<std::vector<Path>> from(q.vertex_count());
    std::size_t total = 0;
    for (int v = 0; v < q.vertex_count(); ++v) {
        auto& out = from[v];
        out.push_back(Path::trivial(v));
        std::size_t layer_begin = 0;
        for (int len = 1; len < K; ++len) {
            std::size_t layer_end = out.size();
            for (std::size_t i = layer_begin; i < layer_end; ++i)
                for (int a : q.outgoing(out[i].target)) {
                    Path p = out[i];
                    p.arrows.push_back(a);
                    p.target = q.arrow(a).target;
                    out.push_back(std::move(p));
                    if (total + out.size() > kPathBudget)
                        throw AdmissibilityError("path space exceeds " + std::to_string(kPathBudget) +
                                                 " paths below length " + std::to_string(K) +
                                                 "; the ideal is not admissible within a tractable bound");
                }
            if (out.size() == layer_end) break;
            layer_begin = layer_end;
        }
        total += out.size();
    }
    return from;
}

// kQ / J^K with one coordinate per path of length < K in each vertex pair.
// Columns are ordered by decreasing path order so that RowSpace pivots land
// on the largest path of each relation consequence.
class Truncation {
public:
    Truncation(const BoundQuiver& bq, int K) : bq_(bq), K_(K), nv_(bq.quiver().vertex_count()) {
        from_ = bounded_paths(bq.quiver(), K);
        cols_.resize(static_cast<std::size_t>(nv_) * nv_);
        for (int x = 0; x < nv_; ++x) {
            for (const auto& p : from_[x]) cols_[idx(x, p.target)].paths.push_back(p);
        }
        for (auto& c : cols_) {
            std::sort(c.paths.begin(), c.paths.end(), [](const Path& a, const Path& b) { return path_less(b, a); });
            for (std::size_t i = 0; i < c.paths.size(); ++i) c.index.emplace(c.paths[i].arrows, i);
        }
    }

    int K() const { return K_; }
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(x) * nv_ + y; }
    std::size_t width(int x, int y) const { return cols_[idx(x, y)].paths.size(); }
    const std::vector<Path>& columns(int x, int y) const { return cols_[idx(x, y)].paths; }
    std::size_t column(int x, int y, const Path& p) const { return cols_[idx(x, y)].index.at(p.arrows); }

    // Consequence spans p·r·q per pair. With `proper` set, only products with
    // at least one nontrivial multiplier (the span of JI + IJ).
    std::vector<RowSpace> consequences(bool proper) const {
        const Field& f = bq_.field();
        const Quiver& q = bq_.quiver();
        std::vector<RowSpace> spans;
        spans.reserve(cols_.size());
        for (int x = 0; x < nv_; ++x)
            for (int y = 0; y < nv_; ++y) spans.emplace_back(f, width(x, y));
        for (const auto& r : bq_.relations()) {
            int minlen = r.min_length();
            if (minlen >= K_) continue;
            for (int x = 0; x < nv_; ++x) {
                for (const auto& pre : from_[x]) {
                    if (pre.target != r.source) continue;
                    for (const auto& post : from_[r.target]) {
                        int extra = pre.length() + post.length();
                        if (extra + minlen >= K_) continue;
                        if (proper && extra == 0) continue;
                        int y = post.target;
                        Vector v = zero_vector(f, width(x, y));
                        for (const auto& t : r.terms) {
                            if (extra + t.path.length() >= K_) continue;
                            Path full = post.after(t.path.after(pre));
                            f.axpy(v[column(x, y, full)], t.coefficient, f.one());
                        }
                        spans[idx(x, y)].insert(std::move(v));
                    }
                }
            }
            (void)q;
        }
        return spans;
    }

    // Truncated coordinate vector of a relation.
    Vector relation_vector(const Relation& r) const {
        const Field& f = bq_.field();
        Vector v = zero_vector(f, width(r.source, r.target));
        for (const auto& t : r.terms)
            if (t.path.length() < K_) f.axpy(v[column(r.source, r.target, t.path)], t.coefficient, f.one());
        return v;
    }

    // True when every path of length n lies in the given spans.
    bool length_vanishes(const std::vector<RowSpace>& spans, int n) const {
        const Field& f = bq_.field();
        for (int x = 0; x < nv_; ++x)
            for (const auto& p : from_[x]) {
                if (p.length() != n) continue;
                Vector v = zero_vector(f, width(x, p.target));
                v[column(x, p.target, p)] = f.one();
                if (!spans[idx(x, p.target)].contains(std::move(v))) return false;
            }
        return true;
    }

private:
    struct Cols {
        std::vector<Path> paths;
        std::map<std::vector<int>, std::size_t> index;
    };
    const BoundQuiver& bq_;
    int K_;
    int nv_;
    std::vector<std::vector<Path>> from_;
    std::vector<Cols> cols_;
};

// Phase-one simplex over the rationals: finds s >= 0 with A s = b, or nothing.
std::optional<std::vector<mpq_class>> feasible_point(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b,
                                                     std::size_t n) {
    const std::size_t m = A.size();
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (auto& x : A[i]) x = -x;
            b[i] = -b[i];
        }
    // Tableau columns: n structural, m artificial, then rhs.
    const std::size_t W = n + m + 1;
    std::vector<std::vector<mpq_class>> T(m + 1, std::vector<mpq_class>(W, 0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][W - 1] = b[i];
        basis[i] = n + i;
    }
    // Objective row: minimize the sum of artificials, expressed in nonbasics.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < W; ++j)
            if (j < n || j == W - 1) T[m][j] -= T[i][j];
    for (;;) {
        std::size_t enter = W;
        for (std::size_t j = 0; j + 1 < W; ++j)
            if (T[m][j] < 0) {
                enter = j;  // Bland: smallest index
                break;
            }
        if (enter == W) break;
        std::size_t leave = m;
        mpq_class best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            mpq_class ratio = T[i][W - 1] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded; cannot happen for phase one
        mpq_class piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            mpq_class c = T[i][enter];
            for (std::size_t j = 0; j < W; ++j) T[i][j] -= c * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (T[m][W - 1] != 0) return std::nullopt;
    std::vector<mpq_class> s(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) s[basis[i]] = T[i][W - 1];
    return s;
}

}  // namespace

std::optional<std::vector<mpq_class>> homogenizing_grading(const BoundQuiver& bq) {
    const std::size_t n = static_cast<std::size_t>(bq.quiver().arrow_count());
    auto counts = [&](const Path& p) {
        std::vector<mpq_class> c(n, 0);
        for (int a : p.arrows) c[a] += 1;
        return c;
    };
    std::vector<std::vector<mpq_class>> A;
    for (const auto& r : bq.relations()) {
        auto base = counts(r.terms.front().path);
        for (std::size_t i = 1; i < r.terms.size(); ++i) {
            auto row = counts(r.terms[i].path);
            for (std::size_t j = 0; j < n; ++j) row[j] -= base[j];
            A.push_back(std::move(row));
        }
    }
    // Weights w = 1 + s with s >= 0: A s = -A 1.
    std::vector<mpq_class> b(A.size(), 0);
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) b[i] -= A[i][j];
    auto s = feasible_point(A, b, n);
    if (!s) return std::nullopt;
    for (auto& x : *s) x += 1;
    return s;
}

AlgebraBasis AlgebraBasis::build(const BoundQuiver& bq, int max_bound) {
    if (max_bound < 1) throw PreconditionError("max_bound must be positive");
    AlgebraBasis ab;
    ab.bq_ = bq;
    ab.nv_ = bq.quiver().vertex_count();

    // Truncated computations are exact when J^M vanishes (acyclic quivers) or
    // when a positive grading makes I homogeneous.
    const Quiver& q = bq.quiver();
    if (q.has_oriented_cycle()) {
        bool homogeneous = std::all_of(bq.relations().begin(), bq.relations().end(),
                                       [](const Relation& r) { return r.min_length() == r.max_length(); });
        if (homogeneous) {
            ab.grading_.assign(q.arrow_count(), mpq_class(1));
        } else if (auto w = homogenizing_grading(bq)) {
            ab.grading_ = std::move(*w);
        } else {
            throw AdmissibilityError(
                "cannot certify admissibility: the quiver has an oriented cycle and no positive arrow grading makes "
                "the relations homogeneous");
        }
    }

    int found = 0;
    for (int K = 4;; K *= 2) {
        int Kc = std::min(K, max_bound + 1);
        Truncation T(bq, Kc);
        auto spans = T.consequences(false);
        for (int n = 1; n < Kc && n <= max_bound; ++n)
            if (T.length_vanishes(spans, n)) {
                found = n;
                break;
            }
        if (found || Kc == max_bound + 1) break;
    }
    if (!found)
        throw AdmissibilityError("not admissible within bound: some path of length " + std::to_string(max_bound) +
                                 " survives modulo I");
    ab.n_ = found;

    const Field& f = bq.field();
    Truncation T(bq, found);
    auto spans = T.consequences(false);
    ab.pairs_.resize(static_cast<std::size_t>(ab.nv_) * ab.nv_);
    for (int x = 0; x < ab.nv_; ++x)
        for (int y = 0; y < ab.nv_; ++y) {
            PairData& pd = ab.pairs_[T.idx(x, y)];
            const RowSpace& span = spans[T.idx(x, y)];
            const auto& cols = T.columns(x, y);
            auto free = span.free_columns();
            std::reverse(free.begin(), free.end());  // ascending path order
            std::vector<long> coord(cols.size(), -1);
            for (std::size_t i = 0; i < free.size(); ++i) {
                coord[free[i]] = static_cast<long>(i);
                pd.basis.push_back(cols[free[i]]);
                pd.coord_of.emplace(cols[free[i]].arrows, i);
            }
            for (std::size_t c = 0; c < cols.size(); ++c) {
                Vector v = zero_vector(f, cols.size());
                v[c] = f.one();
                span.reduce(v);
                Vector nf = zero_vector(f, free.size());
                for (std::size_t j = 0; j < cols.size(); ++j)
                    if (!f.is_zero(v[j])) nf[coord[j]] = v[j];
                pd.normal_form.emplace(cols[c].arrows, std::move(nf));
            }
        }
    return ab;
}

int AlgebraBasis::dimension() const {
    int d = 0;
    for (const auto& p : pairs_) d += static_cast<int>(p.basis.size());
    return d;
}

Element AlgebraBasis::zero(int x, int y) const { return Element{x, y, zero_vector(field(), pair(x, y).basis.size())}; }

Element AlgebraBasis::basis_element(int x, int y, std::size_t i) const {
    Element e = zero(x, y);
    e.coords.at(i) = field().one();
    return e;
}

Element AlgebraBasis::reduce_path(const Path& p) const {
    Element e = zero(p.source, p.target);
    if (p.length() >= n_) return e;
    e.coords = pair(p.source, p.target).normal_form.at(p.arrows);
    return e;
}

Element AlgebraBasis::reduce(const std::vector<Term>& combination) const {
    if (combination.empty()) throw PreconditionError("reduce: empty combination");
    int x = combination.front().path.source, y = combination.front().path.target;
    Element out = zero(x, y);
    for (const auto& t : combination) {
        if (t.path.source != x || t.path.target != y) throw PreconditionError("reduce: terms are not parallel");
        Element e = reduce_path(t.path);
        for (std::size_t i = 0; i < out.coords.size(); ++i) field().axpy(out.coords[i], t.coefficient, e.coords[i]);
    }
    return out;
}

Element AlgebraBasis::multiply(const Element& a, const Element& b) const {
    if (b.target != a.source) throw PreconditionError("multiply: elements are not composable");
    const Field& f = field();
    Element out = zero(b.source, a.target);
    const auto& ba = pair(a.source, a.target).basis;
    const auto& bb = pair(b.source, b.target).basis;
    for (std::size_t i = 0; i < ba.size(); ++i) {
        if (f.is_zero(a.coords[i])) continue;
        for (std::size_t j = 0; j < bb.size(); ++j) {
            if (f.is_zero(b.coords[j])) continue;
            Element prod = reduce_path(ba[i].after(bb[j]));
            Scalar c = f.mul(a.coords[i], b.coords[j]);
            for (std::size_t k = 0; k < out.coords.size(); ++k) f.axpy(out.coords[k], c, prod.coords[k]);
        }
    }
    return out;
}

Element AlgebraBasis::add(const Element& a, const Element& b) const {
    if (a.source != b.source || a.target != b.target) throw PreconditionError("add: elements are not parallel");
    Element out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = field().add(out.coords[i], b.coords[i]);
    return out;
}

Element AlgebraBasis::scale(const Element& a, const Scalar& s) const {
    Element out = a;
    for (auto& c : out.coords) c = field().mul(c, s);
    return out;
}

std::vector<std::size_t> AlgebraBasis::positive_length_indices(int x, int y) const {
    std::vector<std::size_t> out;
    const auto& b = pair(x, y).basis;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].length() > 0) out.push_back(i);
    return out;
}

std::vector<std::size_t> AlgebraBasis::radical_indices(int x) const { return positive_length_indices(x, x); }

// ---------------------------------------------------------------- layers

std::vector<RowSpace> radical_filtration(const AlgebraBasis& ab, int f, int e) {
    const Field& F = ab.field();
    const std::size_t dim = static_cast<std::size_t>(ab.pair_dimension(e, f));
    std::vector<RowSpace> filt;
    RowSpace current(F, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Vector v = zero_vector(F, dim);
        v[i] = F.one();
        current.insert(std::move(v));
    }
    auto rad_f = ab.radical_indices(f);
    auto rad_e = ab.radical_indices(e);
    while (current.dim() > 0) {
        RowSpace next(F, dim);
        for (const auto& row : current.rows()) {
            Element m{e, f, row};
            for (auto i : rad_f) next.insert(ab.multiply(ab.basis_element(f, f, i), m).coords);
            for (auto i : rad_e) next.insert(ab.multiply(m, ab.basis_element(e, e, i)).coords);
        }
        filt.push_back(std::move(current));
        current = std::move(next);
    }
    filt.push_back(std::move(current));
    return filt;
}

LayerProfile layer_profile(const AlgebraBasis& ab, int f, int e) {
    LayerProfile lp{f, e, {}};
    auto filt = radical_filtration(ab, f, e);
    for (std::size_t i = 0; i + 1 < filt.size(); ++i)
        lp.layers.push_back(static_cast<int>(filt[i].dim() - filt[i + 1].dim()));
    return lp;
}

DistributivityResult is_distributive(const AlgebraBasis& ab) {
    const int n = ab.quiver().vertex_count();
    for (int f = 0; f < n; ++f)
        for (int e = 0; e < n; ++e) {
            auto lp = layer_profile(ab, f, e);
            for (std::size_t l = 0; l < lp.layers.size(); ++l)
                if (lp.layers[l] > 1) return {false, DistributivityWitness{f, e, static_cast<int>(l)}};
        }
    return {true, std::nullopt};
}

namespace {

// dim M / (rad A) M for M = e_y Λ e_x acted on by A from one side.
std::size_t top_dimension(const AlgebraBasis& ab, int x, int y, bool left) {
    const Field& F = ab.field();
    const std::size_t dim = static_cast<std::size_t>(ab.pair_dimension(x, y));
    RowSpace radM(F, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        Element m = ab.basis_element(x, y, j);
        if (left) {
            for (auto i : ab.radical_indices(y)) radM.insert(ab.multiply(ab.basis_element(y, y, i), m).coords);
        } else {
            for (auto i : ab.radical_indices(x)) radM.insert(ab.multiply(m, ab.basis_element(x, x, i)).coords);
        }
    }
    return dim - radM.dim();
}

}  // namespace

bool is_cyclic_left(const AlgebraBasis& ab, int x, int y) { return top_dimension(ab, x, y, true) <= 1; }
bool is_cyclic_right(const AlgebraBasis& ab, int x, int y) { return top_dimension(ab, x, y, false) <= 1; }

// ---------------------------------------------------------------- relations

RelationCount minimal_relation_count(const AlgebraBasis& ab) {
    const BoundQuiver& bq = ab.bound_quiver();
    // J^{N+1} ⊆ JI + IJ, so the quotient I / (JI + IJ) is visible in kQ/J^{N+1}.
    Truncation T(bq, ab.nilpotency_bound() + 1);
    auto full = T.consequences(false);
    auto proper = T.consequences(true);
    RelationCount rc;
    const int n = bq.quiver().vertex_count();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int r = static_cast<int>(full[T.idx(x, y)].dim() - proper[T.idx(x, y)].dim());
            if (r > 0) rc.per_pair[{x, y}] = r;
            rc.total += r;
        }
    for (std::size_t i = 0; i < bq.relations().size(); ++i) {
        const Relation& r = bq.relations()[i];
        if (proper[T.idx(r.source, r.target)].insert(T.relation_vector(r))) rc.minimal_subset.push_back(i);
    }
    return rc;
}

}  // namespace tauq
