#include "tauq/representation.hpp"

#include <random>

#include "tauq/errors.hpp"

namespace tauq {

namespace {

void check_same_algebra(const Representation& m, const Representation& n) {
    if (!(m.field() == n.field())) throw PreconditionError("representations over different fields");
    if (!(m.quiver() == n.quiver())) throw PreconditionError("representations of different quivers");
}

bool is_iso_map(const Homomorphism& h) {
    for (const auto& b : h)
        if (!b.is_invertible()) return false;
    return true;
}

Homomorphism combine(const std::vector<Homomorphism>& basis, const std::vector<Scalar>& c, const Field& f) {
    Homomorphism out;
    for (std::size_t x = 0; x < basis[0].size(); ++x) {
        Matrix m(f, basis[0][x].rows(), basis[0][x].cols());
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!f.is_zero(c[i])) m = m + basis[i][x].scaled(c[i]);
        out.push_back(std::move(m));
    }
    return out;
}

// Visits every tuple in values^k; stops when visit returns true.
template <class Visit>
bool for_each_tuple(const std::vector<Scalar>& values, std::size_t k, Visit&& visit) {
    std::vector<std::size_t> idx(k, 0);
    std::vector<Scalar> c(k, values[0]);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) c[i] = values[idx[i]];
        if (visit(c)) return true;
        std::size_t i = 0;
        while (i < k && ++idx[i] == values.size()) idx[i++] = 0;
        if (i == k) return false;
    }
}

bool fits(std::uint64_t base, std::size_t k, std::uint64_t limit) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (n > limit / std::max<std::uint64_t>(base, 1)) return false;
        n *= base;
    }
    return n <= limit;
}

}  // namespace

Representation Representation::make(std::shared_ptr<const BoundQuiver> bq, std::vector<int> dims,
                                    std::vector<Matrix> maps) {
    if (!bq) throw PreconditionError("representation: no bound quiver");
    const Quiver& q = bq->quiver();
    if (static_cast<int>(dims.size()) != q.vertex_count())
        throw PreconditionError("representation: dimension vector has wrong length");
    for (int d : dims)
        if (d < 0) throw PreconditionError("representation: negative dimension");
    if (static_cast<int>(maps.size()) != q.arrow_count())
        throw PreconditionError("representation: one matrix per arrow required");
    for (int a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        if (maps[a].rows() != static_cast<std::size_t>(dims[ar.target]) ||
            maps[a].cols() != static_cast<std::size_t>(dims[ar.source]))
            throw PreconditionError("representation: matrix of arrow '" + ar.name + "' has the wrong shape");
        if (!(maps[a].field() == bq->field()))
            throw PreconditionError("representation: matrix of arrow '" + ar.name + "' over the wrong field");
    }
    Representation r;
    r.bq_ = std::move(bq);
    r.dims_ = std::move(dims);
    r.maps_ = std::move(maps);
    if (!r.satisfies_relations()) throw PreconditionError("representation: a relation does not act as zero");
    return r;
}

Representation Representation::zero(std::shared_ptr<const BoundQuiver> bq, std::vector<int> dims) {
    std::vector<Matrix> maps;
    for (const auto& a : bq->quiver().arrows()) maps.emplace_back(bq->field(), dims[a.target], dims[a.source]);
    Representation r;
    r.bq_ = std::move(bq);
    r.dims_ = std::move(dims);
    r.maps_ = std::move(maps);
    return r;
}

int Representation::total_dim() const {
    int s = 0;
    for (int d : dims_) s += d;
    return s;
}

Matrix Representation::path_matrix(const Path& p) const {
    Matrix m = Matrix::identity(field(), dims_[p.source]);
    for (int a : p.arrows) m = maps_[a] * m;
    return m;
}

bool Representation::satisfies_relations() const {
    for (const auto& r : bq_->relations()) {
        Matrix sum(field(), dims_[r.target], dims_[r.source]);
        for (const auto& t : r.terms) sum = sum + path_matrix(t.path).scaled(t.coefficient);
        if (!sum.is_zero()) return false;
    }
    return true;
}

Representation simple(std::shared_ptr<const BoundQuiver> bq, int x) {
    std::vector<int> dims(bq->quiver().vertex_count(), 0);
    dims[x] = 1;
    return Representation::zero(std::move(bq), std::move(dims));
}

Representation direct_sum(const Representation& m, const Representation& n) {
    check_same_algebra(m, n);
    const Quiver& q = m.quiver();
    std::vector<int> dims(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v) dims[v] = m.dim(v) + n.dim(v);
    std::vector<Matrix> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        Matrix s(m.field(), dims[ar.target], dims[ar.source]);
        for (int i = 0; i < m.dim(ar.target); ++i)
            for (int j = 0; j < m.dim(ar.source); ++j) s(i, j) = m.map(a)(i, j);
        for (int i = 0; i < n.dim(ar.target); ++i)
            for (int j = 0; j < n.dim(ar.source); ++j) s(m.dim(ar.target) + i, m.dim(ar.source) + j) = n.map(a)(i, j);
        maps.push_back(std::move(s));
    }
    return Representation::make(m.bound_quiver_ptr(), std::move(dims), std::move(maps));
}

Representation projective(const AlgebraBasis& ab, int x) {
    auto bq = std::make_shared<const BoundQuiver>(ab.bound_quiver());
    const Quiver& q = ab.quiver();
    std::vector<int> dims(q.vertex_count());
    for (int y = 0; y < q.vertex_count(); ++y) dims[y] = ab.pair_dimension(x, y);
    std::vector<Matrix> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        Matrix m(ab.field(), dims[ar.target], dims[ar.source]);
        const auto& basis = ab.basis(x, ar.source);
        Path arrow = Path::of_arrow(q, a);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Element img = ab.reduce_path(arrow.after(basis[j]));
            for (std::size_t i = 0; i < img.coords.size(); ++i) m(i, j) = img.coords[i];
        }
        maps.push_back(std::move(m));
    }
    return Representation::make(std::move(bq), std::move(dims), std::move(maps));
}

int Submodule::total_dim() const {
    int s = 0;
    for (const auto& sp : spaces) s += static_cast<int>(sp.dim());
    return s;
}

Submodule generated_submodule(const Representation& m, const std::vector<VertexVector>& generators) {
    const Quiver& q = m.quiver();
    Submodule s;
    for (int v = 0; v < q.vertex_count(); ++v) s.spaces.emplace_back(m.field(), m.dim(v));
    std::vector<VertexVector> queue;
    for (const auto& g : generators) {
        if (g.coords.size() != static_cast<std::size_t>(m.dim(g.vertex)))
            throw PreconditionError("submodule generator has the wrong length");
        if (s.spaces[g.vertex].insert(g.coords)) queue.push_back(g);
    }
    while (!queue.empty()) {
        VertexVector w = std::move(queue.back());
        queue.pop_back();
        for (int a : q.outgoing(w.vertex)) {
            int t = q.arrow(a).target;
            Vector img = m.map(a).apply(w.coords);
            if (s.spaces[t].insert(img)) queue.push_back({t, std::move(img)});
        }
    }
    return s;
}

Representation quotient(const Representation& m, const Submodule& s) {
    const Quiver& q = m.quiver();
    std::vector<std::vector<std::size_t>> free(q.vertex_count());
    std::vector<int> dims(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v) {
        free[v] = s.spaces[v].free_columns();
        dims[v] = static_cast<int>(free[v].size());
    }
    std::vector<Matrix> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        Matrix out(m.field(), dims[ar.target], dims[ar.source]);
        for (std::size_t j = 0; j < free[ar.source].size(); ++j) {
            Vector img = m.map(a).column(free[ar.source][j]);
            s.spaces[ar.target].reduce(img);
            for (std::size_t i = 0; i < free[ar.target].size(); ++i) out(i, j) = img[free[ar.target][i]];
        }
        maps.push_back(std::move(out));
    }
    return Representation::make(m.bound_quiver_ptr(), std::move(dims), std::move(maps));
}

Representation cyclic_quotient(const Representation& m, const VertexVector& w) {
    if (is_zero_vector(m.field(), w.coords)) return m;
    return quotient(m, generated_submodule(m, {w}));
}

std::vector<Homomorphism> hom_basis(const Representation& m, const Representation& n) {
    check_same_algebra(m, n);
    const Quiver& q = m.quiver();
    const Field& f = m.field();
    std::vector<std::size_t> offset(q.vertex_count() + 1, 0);
    for (int v = 0; v < q.vertex_count(); ++v)
        offset[v + 1] = offset[v] + static_cast<std::size_t>(n.dim(v)) * m.dim(v);
    std::size_t unknowns = offset.back();
    auto var = [&](int v, int r, int c) { return offset[v] + static_cast<std::size_t>(r) * m.dim(v) + c; };

    std::size_t eqs = 0;
    for (const auto& ar : q.arrows()) eqs += static_cast<std::size_t>(n.dim(ar.target)) * m.dim(ar.source);
    Matrix sys(f, eqs, unknowns);
    std::size_t row = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
        int s = q.arrow(a).source, t = q.arrow(a).target;
        const Matrix& ma = m.map(a);
        const Matrix& na = n.map(a);
        // (N(a) f_s - f_t M(a))[i][j] = 0
        for (int i = 0; i < n.dim(t); ++i)
            for (int j = 0; j < m.dim(s); ++j, ++row) {
                for (int k = 0; k < n.dim(s); ++k) f.axpy(sys(row, var(s, k, j)), f.one(), na(i, k));
                for (int k = 0; k < m.dim(t); ++k) f.axpy(sys(row, var(t, i, k)), f.neg(f.one()), ma(k, j));
            }
    }
    std::vector<Vector> kernel;
    if (eqs == 0) {
        for (std::size_t i = 0; i < unknowns; ++i) {
            Vector v = zero_vector(f, unknowns);
            v[i] = f.one();
            kernel.push_back(std::move(v));
        }
    } else {
        kernel = sys.nullspace();
    }
    std::vector<Homomorphism> out;
    for (const auto& v : kernel) {
        Homomorphism h;
        for (int x = 0; x < q.vertex_count(); ++x) {
            Matrix b(f, n.dim(x), m.dim(x));
            for (int r = 0; r < n.dim(x); ++r)
                for (int c = 0; c < m.dim(x); ++c) b(r, c) = v[var(x, r, c)];
            h.push_back(std::move(b));
        }
        out.push_back(std::move(h));
    }
    return out;
}

int hom_dim(const Representation& m, const Representation& n) { return static_cast<int>(hom_basis(m, n).size()); }

bool is_brick(const Representation& m) {
    if (m.is_zero()) throw PreconditionError("is_brick: zero module");
    return hom_dim(m, m) == 1;
}

std::string to_string(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        default: return "unknown";
    }
}

Tri is_isomorphic(const Representation& m, const Representation& n, const IsoOptions& options) {
    check_same_algebra(m, n);
    if (m.dims() != n.dims()) return Tri::False;
    if (m.is_zero()) return Tri::True;
    auto mn = hom_basis(m, n);
    auto nm = hom_basis(n, m);
    if (mn.size() != nm.size() || mn.empty()) return Tri::False;
    const Field& f = m.field();

    if (hom_dim(m, m) == 1) {
        // End(M) = k: M ~ N iff some g f != 0, since then g f is a nonzero scalar.
        for (const auto& fm : mn)
            for (const auto& gm : nm)
                for (std::size_t x = 0; x < fm.size(); ++x)
                    if (!(gm[x] * fm[x]).is_zero()) return Tri::True;
        return Tri::False;
    }
    if (mn.size() == 1) return is_iso_map(mn[0]) ? Tri::True : Tri::False;

    std::size_t k = mn.size();
    auto found = [&](const std::vector<Scalar>& c) { return is_iso_map(combine(mn, c, f)); };
    if (f.is_finite() && fits(f.characteristic(), k, options.exhaustive_limit)) {
        std::vector<Scalar> values;
        for (std::uint32_t i = 0; i < f.characteristic(); ++i) values.push_back(f.from_int(i));
        return for_each_tuple(values, k, found) ? Tri::True : Tri::False;
    }
    // det of a generic combination is a polynomial of degree <= D; a nonzero
    // one cannot vanish on a grid of D+1 distinct values per variable.
    int D = m.total_dim();
    if ((f.is_rational() || f.characteristic() > static_cast<std::uint32_t>(D)) &&
        fits(static_cast<std::uint64_t>(D) + 1, k, options.exhaustive_limit)) {
        std::vector<Scalar> values;
        for (int i = 0; i <= D; ++i) values.push_back(f.from_int(i));
        return for_each_tuple(values, k, found) ? Tri::True : Tri::False;
    }
    std::mt19937_64 rng(options.seed);
    std::vector<Scalar> c(k);
    for (int t = 0; t < options.random_trials; ++t) {
        for (auto& x : c)
            x = f.is_finite() ? f.from_int(static_cast<std::int64_t>(rng() % f.characteristic()))
                              : f.from_int(static_cast<std::int64_t>(rng() % 2001) - 1000);
        if (found(c)) return Tri::True;
    }
    return Tri::Unknown;
}

BrickFamily bongartz_family(const AlgebraBasis& ab, int e, int f, const std::vector<Scalar>& lambdas) {
    const Quiver& q = ab.quiver();
    const Field& F = ab.field();
    if (e < 0 || e >= q.vertex_count() || f < 0 || f >= q.vertex_count())
        throw PreconditionError("family: vertex index out of range");
    if (ab.pair_dimension(e, e) != 1)
        throw PreconditionError("family: e_eΛe_e is not k at '" + q.vertex_name(e) + "' (dimension " +
                                std::to_string(ab.pair_dimension(e, e)) + ")");
    auto filt = radical_filtration(ab, f, e);
    int l = -1;
    for (std::size_t i = 0; i + 1 < filt.size(); ++i)
        if (filt[i].dim() - filt[i + 1].dim() > 1) {
            l = static_cast<int>(i);
            break;
        }
    if (l < 0)
        throw PreconditionError("family: no radical layer of e_" + q.vertex_name(f) + "Λe_" + q.vertex_name(e) +
                                " has dimension > 1");

    BrickFamily fam;
    fam.algebra = std::make_shared<const BoundQuiver>(ab.bound_quiver());
    fam.e = e;
    fam.f = f;
    fam.layer = l;
    fam.basis = ab.basis(e, f);
    fam.lambdas = lambdas;
    {
        RowSpace next = filt[l + 1];
        std::vector<Vector> picked;
        for (const auto& r : filt[l].rows()) {
            if (next.insert(r)) picked.push_back(r);
            if (picked.size() == 2) break;
        }
        fam.u = picked[0];
        fam.v = picked[1];
    }

    Representation P = projective(ab, e);
    // Generators of Je: g * c for g among the generators of J and c a basis
    // path from e to the source of g.
    std::vector<VertexVector> gens;
    auto push_times_e = [&](const Element& g) {
        for (int i = 0; i < ab.pair_dimension(e, g.source); ++i) {
            Element prod = ab.multiply(g, ab.basis_element(e, g.source, i));
            if (!ab.is_zero(prod)) gens.push_back({prod.target, prod.coords});
        }
    };
    for (const auto& r : filt[l + 1].rows()) push_times_e(Element{e, f, r});
    Element ue{e, f, fam.u}, ve{e, f, fam.v};
    for (int x = 0; x < q.vertex_count(); ++x)
        for (int y = 0; y < q.vertex_count(); ++y)
            for (std::size_t i : ab.positive_length_indices(x, y)) {
                Element n = ab.basis_element(x, y, i);
                if (x == f) {  // n u, n v
                    push_times_e(ab.multiply(n, ue));
                    push_times_e(ab.multiply(n, ve));
                }
                if (y == e) {  // u n, v n
                    push_times_e(ab.multiply(ue, n));
                    push_times_e(ab.multiply(ve, n));
                }
            }
    fam.ideal_dim = generated_submodule(P, gens).total_dim();

    for (const auto& lam : lambdas) {
        auto all = gens;
        Vector w = fam.u;
        for (std::size_t i = 0; i < w.size(); ++i) F.axpy(w[i], F.neg(lam), fam.v[i]);
        all.push_back({f, w});
        fam.members.push_back(quotient(P, generated_submodule(P, all)));
    }

    fam.all_bricks = true;
    for (const auto& m : fam.members) {
        int d = m.is_zero() ? 0 : hom_dim(m, m);
        fam.endo_dims.push_back(d);
        fam.all_bricks = fam.all_bricks && d == 1 && m.dim(e) == 1;
    }
    fam.pairwise_non_isomorphic = true;
    for (std::size_t i = 0; i < fam.members.size(); ++i)
        for (std::size_t j = i + 1; j < fam.members.size(); ++j)
            if (is_isomorphic(fam.members[i], fam.members[j]) != Tri::False) fam.pairwise_non_isomorphic = false;
    if (!fam.members.empty()) {
        fam.dims = fam.members.front().dims();
        for (const auto& m : fam.members)
            if (m.dims() != fam.dims) fam.all_bricks = false;
    }
    return fam;
}

}  // namespace tauq
