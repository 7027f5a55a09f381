#include "tauq/linalg.hpp"

#include <stdexcept>

namespace tauq {

Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, f.zero()); }

bool is_zero_vector(const Field& f, const Vector& v) {
    for (const auto& x : v)
        if (!f.is_zero(x)) return false;
    return true;
}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Vector Matrix::row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vector Matrix::column(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
}

bool Matrix::is_zero() const { return is_zero_vector(field_, data_); }

bool Matrix::equals(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (!field_.equal(data_[i], other.data_[i])) return false;
    return true;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (field_.is_zero(a)) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) field_.axpy(out(i, j), a, rhs(k, j));
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = field_.mul(x, s);
    return out;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vector out = zero_vector(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) field_.axpy(out[i], (*this)(i, k), v[k]);
    return out;
}

std::size_t Matrix::rank() const {
    RowSpace rs(field_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) rs.insert(row(r));
    return rs.dim();
}

bool Matrix::is_invertible() const { return rows_ == cols_ && rank() == rows_; }

std::vector<Vector> Matrix::nullspace() const {
    RowSpace rs(field_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) rs.insert(row(r));
    // In RREF, each free column f gives the kernel vector e_f - sum_rows row[f] e_pivot.
    std::vector<Vector> basis;
    auto free = rs.free_columns();
    auto pivots = rs.pivots();
    for (std::size_t f : free) {
        Vector v = zero_vector(field_, cols_);
        v[f] = field_.one();
        for (std::size_t i = 0; i < rs.rows().size(); ++i) v[pivots[i]] = field_.neg(rs.rows()[i][f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool RowSpace::insert(Vector v) {
    reduce(v);
    std::size_t p = 0;
    while (p < n_ && field_.is_zero(v[p])) ++p;
    if (p == n_) return false;
    Scalar s = field_.inv(v[p]);
    for (std::size_t j = p; j < n_; ++j) v[j] = field_.mul(v[j], s);
    // Keep the basis fully reduced: clear column p from existing rows.
    for (auto& row : rows_) {
        if (field_.is_zero(row[p])) continue;
        Scalar c = field_.neg(row[p]);
        for (std::size_t j = p; j < n_; ++j) field_.axpy(row[j], c, v[j]);
    }
    pivot_row_[p] = static_cast<long>(rows_.size());
    row_pivot_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
}

void RowSpace::reduce(Vector& v) const {
    if (v.size() != n_) throw std::invalid_argument("RowSpace: vector length mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::size_t p = row_pivot_[i];
        if (field_.is_zero(v[p])) continue;
        Scalar c = field_.neg(v[p]);
        const Vector& row = rows_[i];
        for (std::size_t j = p; j < n_; ++j)
            if (!field_.is_zero(row[j])) field_.axpy(v[j], c, row[j]);
    }
}

bool RowSpace::contains(Vector v) const {
    reduce(v);
    return is_zero_vector(field_, v);
}

std::vector<std::size_t> RowSpace::pivots() const { return row_pivot_; }

std::vector<std::size_t> RowSpace::free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
        if (pivot_row_[j] < 0) out.push_back(j);
    return out;
}

}  // namespace tauq
