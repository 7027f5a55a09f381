#include "tauq/census.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "tauq/errors.hpp"

namespace tauq {

namespace {

using Tuple = std::vector<std::uint32_t>;

struct Mod {
    std::uint32_t p;
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p); }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + p - b) % p); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>(std::uint64_t{a} * b % p); }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t a) const { return pow(a, p - 2); }
};

// Row-major r x c matrix mod p.
struct Mat {
    int r = 0, c = 0;
    std::vector<std::uint32_t> a;
    Mat() = default;
    Mat(int rows, int cols) : r(rows), c(cols), a(static_cast<std::size_t>(rows) * cols, 0) {}
    std::uint32_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * c + j]; }
    std::uint32_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * c + j]; }
    bool zero() const {
        for (auto x : a)
            if (x) return false;
        return true;
    }
};

Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat mul(const Mod& M, const Mat& x, const Mat& y) {
    Mat out(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
        for (int k = 0; k < x.c; ++k) {
            std::uint32_t v = x.at(i, k);
            if (!v) continue;
            for (int j = 0; j < y.c; ++j) out.at(i, j) = M.add(out.at(i, j), M.mul(v, y.at(k, j)));
        }
    return out;
}

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(const Mod& M, Mat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.c && row < m.r; ++col) {
        int sel = -1;
        for (int i = row; i < m.r; ++i)
            if (m.at(i, col)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.c; ++j) std::swap(m.at(sel, j), m.at(row, j));
        std::uint32_t s = M.inv(m.at(row, col));
        for (int j = col; j < m.c; ++j) m.at(row, j) = M.mul(m.at(row, j), s);
        for (int i = 0; i < m.r; ++i) {
            if (i == row || !m.at(i, col)) continue;
            std::uint32_t f = m.at(i, col);
            for (int j = col; j < m.c; ++j) m.at(i, j) = M.sub(m.at(i, j), M.mul(f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(const Mod& M, Mat m) { return static_cast<int>(rref(M, m).size()); }

std::vector<std::vector<std::uint32_t>> nullspace(const Mod& M, Mat m) {
    auto piv = rref(M, m);
    std::vector<bool> is_piv(m.c, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<std::uint32_t>> out;
    for (int f = 0; f < m.c; ++f) {
        if (is_piv[f]) continue;
        std::vector<std::uint32_t> v(m.c, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = M.sub(0, m.at(static_cast<int>(i), f));
        out.push_back(std::move(v));
    }
    return out;
}

struct Layout {
    Mod mod;
    std::vector<int> dims;
    std::vector<int> src, tgt;
    std::vector<std::size_t> offset;  // entry offset of each arrow in a tuple
    std::size_t entries = 0;
    struct Term {
        std::uint32_t coef;
        std::vector<int> arrows;
    };
    struct Rel {
        int s, t;
        std::vector<Term> terms;
    };
    std::vector<Rel> rels;
    std::vector<std::pair<int, int>> compositions;  // (a, b) with t(a) = s(b)

    Mat arrow(const Tuple& x, int a) const {
        Mat m(dims[tgt[a]], dims[src[a]]);
        std::copy(x.begin() + offset[a], x.begin() + offset[a] + m.a.size(), m.a.begin());
        return m;
    }

    bool satisfies(const Tuple& x, const std::vector<Mat>& arrows) const {
        for (const auto& r : rels) {
            Mat sum(dims[r.t], dims[r.s]);
            for (const auto& t : r.terms) {
                Mat m = identity(dims[r.s]);
                for (int a : t.arrows) m = mul(mod, arrows[a], m);
                for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] = mod.add(sum.a[i], mod.mul(t.coef, m.a[i]));
            }
            if (!sum.zero()) return false;
        }
        (void)x;
        return true;
    }

    // Intertwiner system Y_a f_s - f_t X_a = 0 for f: X -> Y.
    Mat hom_system(const std::vector<Mat>& X, const std::vector<Mat>& Y) const {
        int nv = static_cast<int>(dims.size());
        std::vector<int> off(nv + 1, 0);
        for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + dims[v] * dims[v];
        int eqs = 0;
        for (std::size_t a = 0; a < src.size(); ++a) eqs += dims[tgt[a]] * dims[src[a]];
        Mat sys(eqs, off[nv]);
        int row = 0;
        for (std::size_t a = 0; a < src.size(); ++a) {
            int s = src[a], t = tgt[a];
            for (int i = 0; i < dims[t]; ++i)
                for (int j = 0; j < dims[s]; ++j, ++row) {
                    for (int k = 0; k < dims[s]; ++k) {
                        auto& e = sys.at(row, off[s] + k * dims[s] + j);
                        e = mod.add(e, Y[a].at(i, k));
                    }
                    for (int k = 0; k < dims[t]; ++k) {
                        auto& e = sys.at(row, off[t] + i * dims[t] + k);
                        e = mod.sub(e, X[a].at(k, j));
                    }
                }
        }
        return sys;
    }

    int unknowns() const {
        int u = 0;
        for (int d : dims) u += d * d;
        return u;
    }

    bool is_brick(const std::vector<Mat>& X) const {
        if (src.empty()) return unknowns() == 1;
        return unknowns() - rank(mod, hom_system(X, X)) == 1;
    }

    std::vector<std::vector<Mat>> hom(const std::vector<Mat>& X, const std::vector<Mat>& Y) const {
        std::vector<std::vector<std::uint32_t>> ker;
        int u = unknowns();
        if (src.empty()) {
            for (int i = 0; i < u; ++i) {
                std::vector<std::uint32_t> v(u, 0);
                v[i] = 1;
                ker.push_back(std::move(v));
            }
        } else {
            ker = nullspace(mod, hom_system(X, Y));
        }
        std::vector<std::vector<Mat>> out;
        for (const auto& v : ker) {
            std::vector<Mat> h;
            std::size_t o = 0;
            for (int d : dims) {
                Mat m(d, d);
                std::copy(v.begin() + o, v.begin() + o + m.a.size(), m.a.begin());
                o += m.a.size();
                h.push_back(std::move(m));
            }
            out.push_back(std::move(h));
        }
        return out;
    }

    // Both bricks with equal dimension vectors: isomorphic iff some g f != 0.
    bool bricks_isomorphic(const std::vector<Mat>& X, const std::vector<Mat>& Y) const {
        auto fs = hom(X, Y);
        if (fs.empty()) return false;
        auto gs = hom(Y, X);
        for (const auto& f : fs)
            for (const auto& g : gs)
                for (std::size_t v = 0; v < dims.size(); ++v)
                    if (!mul(mod, g[v], f[v]).zero()) return true;
        return false;
    }

    std::vector<int> signature(const std::vector<Mat>& X) const {
        std::vector<int> s;
        for (const auto& m : X) s.push_back(rank(mod, m));
        for (auto [a, b] : compositions) s.push_back(rank(mod, mul(mod, X[b], X[a])));
        return s;
    }
};

struct Found {
    Tuple tuple;
    std::vector<Mat> mats;
    std::vector<int> sig;
};

// Isomorphism classes kept in discovery order with signature buckets.
struct ClassSet {
    std::vector<Found> classes;
    std::map<std::vector<int>, std::vector<std::size_t>> buckets;

    bool add(const Layout& L, Found f) {
        auto& b = buckets[f.sig];
        for (std::size_t i : b)
            if (L.bricks_isomorphic(classes[i].mats, f.mats)) return false;
        b.push_back(classes.size());
        classes.push_back(std::move(f));
        return true;
    }
};

std::uint32_t primitive_root(const Mod& M) {
    if (M.p == 2) return 1;
    std::uint32_t n = M.p - 1;
    std::vector<std::uint32_t> factors;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) factors.push_back(n);
    for (std::uint32_t g = 2; g < M.p; ++g) {
        bool ok = true;
        for (auto f : factors) ok = ok && M.pow(g, (M.p - 1) / f) != 1;
        if (ok) return g;
    }
    return 1;
}

constexpr std::uint64_t kLoopOrbitLimit = std::uint64_t{1} << 22;

// Least element of every conjugacy orbit of n x n matrices, when the matrix
// space is small enough to sweep; otherwise every matrix.
std::vector<Tuple> loop_pivots(const Mod& M, int n, bool& reduced) {
    std::uint64_t total = 1;
    for (int i = 0; i < n * n; ++i) {
        total *= M.p;
        if (total > kLoopOrbitLimit) break;
    }
    auto decode = [&](std::uint64_t idx) {
        Tuple t(n * n);
        for (int i = n * n - 1; i >= 0; --i) {
            t[i] = static_cast<std::uint32_t>(idx % M.p);
            idx /= M.p;
        }
        return t;
    };
    std::vector<Tuple> out;
    if (total > kLoopOrbitLimit) {
        reduced = false;
        return out;  // caller enumerates the full space
    }
    reduced = true;
    auto encode = [&](const Mat& m) {
        std::uint64_t idx = 0;
        for (auto x : m.a) idx = idx * M.p + x;
        return idx;
    };
    std::vector<std::pair<Mat, Mat>> gens;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Mat g = identity(n), gi = identity(n);
            g.at(i, j) = 1;
            gi.at(i, j) = M.p - 1;
            gens.emplace_back(g, gi);
        }
    std::uint32_t w = primitive_root(M);
    if (w != 1) {
        Mat g = identity(n), gi = identity(n);
        g.at(0, 0) = w;
        gi.at(0, 0) = M.inv(w);
        gens.emplace_back(g, gi);
    }
    std::vector<bool> seen(total, false);
    std::vector<std::uint64_t> stack;
    for (std::uint64_t s = 0; s < total; ++s) {
        if (seen[s]) continue;
        out.push_back(decode(s));  // ascending sweep: s is its orbit's minimum
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            std::uint64_t cur = stack.back();
            stack.pop_back();
            Mat A(n, n);
            A.a = decode(cur);
            for (const auto& [g, gi] : gens) {
                std::uint64_t nx = encode(mul(M, mul(M, g, A), gi));
                if (!seen[nx]) {
                    seen[nx] = true;
                    stack.push_back(nx);
                }
            }
        }
    }
    return out;
}

std::vector<Tuple> rank_pivots(int rows, int cols) {
    std::vector<Tuple> out;
    for (int r = 0; r <= std::min(rows, cols); ++r) {
        Tuple t(static_cast<std::size_t>(rows) * cols, 0);
        for (int i = 0; i < r; ++i) t[static_cast<std::size_t>(rows - r + i) * cols + (cols - 1 - i)] = 1;
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::uint32_t> tuple_key(const Representation& m) {
    std::vector<std::uint32_t> key;
    const Field& f = m.field();
    for (const auto& mat : m.maps())
        for (std::size_t i = 0; i < mat.rows(); ++i)
            for (std::size_t j = 0; j < mat.cols(); ++j) key.push_back(f.residue(mat(i, j)));
    return key;
}

CensusResult enumerate_bricks(const BoundQuiver& bq_in, const std::vector<int>& d, const Field& field,
                              const CensusOptions& options) {
    if (!field.is_finite()) throw PreconditionError("census: a prime field F_p is required");
    auto bq = std::make_shared<const BoundQuiver>(bq_in.with_field(field));
    const Quiver& q = bq->quiver();
    if (static_cast<int>(d.size()) != q.vertex_count())
        throw PreconditionError("census: dimension vector needs " + std::to_string(q.vertex_count()) + " entries");
    for (int x : d)
        if (x < 0) throw PreconditionError("census: negative dimension");

    Layout L;
    L.mod = Mod{field.characteristic()};
    L.dims = d;
    for (const auto& a : q.arrows()) {
        L.src.push_back(a.source);
        L.tgt.push_back(a.target);
        L.offset.push_back(L.entries);
        L.entries += static_cast<std::size_t>(d[a.target]) * d[a.source];
    }
    for (const auto& r : bq->relations()) {
        Layout::Rel rel{r.source, r.target, {}};
        for (const auto& t : r.terms) rel.terms.push_back({field.residue(t.coefficient), t.path.arrows});
        L.rels.push_back(std::move(rel));
    }
    for (int a = 0; a < q.arrow_count(); ++a)
        for (int b : q.outgoing(q.arrow(a).target)) L.compositions.emplace_back(a, b);

    CensusResult res;
    res.field = field;
    res.dims = d;
    int total_dim = 0;
    for (int x : d) total_dim += x;

    // Pivot arrow and its normal forms.
    int pivot = -1;
    for (int a = 0; a < q.arrow_count(); ++a)
        if (d[q.arrow(a).source] * d[q.arrow(a).target] > 0) {
            pivot = a;
            break;
        }
    std::vector<Tuple> pivots{Tuple{}};
    std::size_t pivot_entries = 0;
    if (pivot >= 0) {
        const auto& ar = q.arrow(pivot);
        res.pivot_arrow = ar.name;
        pivot_entries = static_cast<std::size_t>(d[ar.source]) * d[ar.target];
        bool reduced = true;
        if (ar.source == ar.target) {
            pivots = loop_pivots(L.mod, d[ar.source], reduced);
            if (!reduced) {
                // full space: at most the budget is ever materialised
                std::uint64_t n = 1;
                for (std::size_t i = 0; i < pivot_entries; ++i) {
                    n *= L.mod.p;
                    if (n > options.budget)
                        throw BudgetError("census: " + std::to_string(L.mod.p) + "^" + std::to_string(pivot_entries) +
                                          " loop matrices exceed the budget of " + std::to_string(options.budget));
                }
                for (std::uint64_t i = 0; i < n; ++i) {
                    Tuple t(pivot_entries);
                    std::uint64_t idx = i;
                    for (std::size_t k = pivot_entries; k-- > 0;) {
                        t[k] = static_cast<std::uint32_t>(idx % L.mod.p);
                        idx /= L.mod.p;
                    }
                    pivots.push_back(std::move(t));
                }
            }
            // relations supported on the pivot loop alone are conjugation invariant
            std::vector<Layout::Rel> own;
            for (const auto& r : L.rels) {
                bool only = true;
                for (const auto& t : r.terms)
                    for (int a : t.arrows) only = only && a == pivot;
                if (only) own.push_back(r);
            }
            if (!own.empty()) {
                Layout P = L;
                P.rels = own;
                std::vector<Tuple> kept;
                for (auto& t : pivots) {
                    std::vector<Mat> arrows(q.arrow_count());
                    arrows[pivot] = Mat(d[ar.source], d[ar.source]);
                    arrows[pivot].a = t;
                    if (P.satisfies(t, arrows)) kept.push_back(std::move(t));
                }
                pivots = std::move(kept);
            }
        } else {
            pivots = rank_pivots(d[ar.target], d[ar.source]);
        }
    }
    res.pivot_classes = pivots.size();

    std::size_t rest = L.entries - pivot_entries;
    std::uint64_t per_pivot = 1;
    for (std::size_t i = 0; i < rest; ++i) {
        if (per_pivot > options.budget / L.mod.p)
            throw BudgetError("census: search space " + std::to_string(L.mod.p) + "^" + std::to_string(rest) +
                              " per pivot form exceeds the budget of " + std::to_string(options.budget));
        per_pivot *= L.mod.p;
    }
    if (!pivots.empty() && per_pivot > options.budget / pivots.size())
        throw BudgetError("census: " + std::to_string(pivots.size()) + " pivot forms x " + std::to_string(per_pivot) +
                          " tuples exceed the budget of " + std::to_string(options.budget));
    std::uint64_t total = per_pivot * pivots.size();
    res.candidates = total;
    if (total_dim == 0 || total == 0) return res;

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t nblocks = std::min<std::uint64_t>(total, std::uint64_t{threads} * 8);
    std::uint64_t block_size = (total + nblocks - 1) / nblocks;
    nblocks = (total + block_size - 1) / block_size;

    struct BlockResult {
        std::uint64_t satisfying = 0, bricks = 0;
        ClassSet classes;
    };
    std::vector<BlockResult> blocks(nblocks);
    std::atomic<std::uint64_t> next{0};

    auto work = [&]() {
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            std::uint64_t begin = b * block_size, end = std::min(total, begin + block_size);
            BlockResult& out = blocks[b];
            std::uint64_t pi = begin / per_pivot, ri = begin % per_pivot;
            Tuple x(L.entries, 0);
            std::copy(pivots[pi].begin(), pivots[pi].end(), x.begin());
            for (std::size_t k = L.entries; k-- > pivot_entries;) {
                x[k] = static_cast<std::uint32_t>(ri % L.mod.p);
                ri /= L.mod.p;
            }
            std::vector<Mat> mats(q.arrow_count());
            for (std::uint64_t c = begin; c < end; ++c) {
                for (int a = 0; a < q.arrow_count(); ++a) mats[a] = L.arrow(x, a);
                if (L.satisfies(x, mats)) {
                    ++out.satisfying;
                    if (L.is_brick(mats)) {
                        ++out.bricks;
                        out.classes.add(L, Found{x, mats, L.signature(mats)});
                    }
                }
                // advance: odometer on the non-pivot entries, then next pivot form
                bool carry = true;
                for (std::size_t k = L.entries; carry && k > pivot_entries;) {
                    --k;
                    if (++x[k] < L.mod.p)
                        carry = false;
                    else
                        x[k] = 0;
                }
                if (carry && c + 1 < end) {
                    ++pi;
                    std::copy(pivots[pi].begin(), pivots[pi].end(), x.begin());
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::uint64_t>(threads, nblocks); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    ClassSet global;
    for (auto& b : blocks) {
        res.satisfying += b.satisfying;
        res.bricks += b.bricks;
        for (auto& f : b.classes.classes) global.add(L, std::move(f));
    }
    for (const auto& f : global.classes) {
        std::vector<Matrix> maps;
        for (int a = 0; a < q.arrow_count(); ++a) {
            Matrix m(field, d[q.arrow(a).target], d[q.arrow(a).source]);
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = field.from_int(f.mats[a].at(static_cast<int>(i), static_cast<int>(j)));
            maps.push_back(std::move(m));
        }
        res.classes.push_back(Representation::make(bq, d, std::move(maps)));
    }
    return res;
}

}  // namespace tauq
