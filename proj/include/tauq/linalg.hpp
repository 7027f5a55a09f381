#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tauq/field.hpp"

namespace tauq {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a Field. The field travels with the matrix so
/// products and eliminations need no extra context.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

    static Matrix identity(Field f, std::size_t n);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    bool is_zero() const;
    bool equals(const Matrix& other) const;

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix scaled(const Scalar& s) const;
    Vector apply(const Vector& v) const;

    std::size_t rank() const;
    bool is_invertible() const;
    /// Basis of {x : A x = 0}, as column vectors.
    std::vector<Vector> nullspace() const;

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Subspace of F^n kept in reduced row echelon form. Pivots are the leftmost
/// nonzero coordinate of each row, so callers order coordinates by the
/// priority in which they should be eliminated.
class RowSpace {
public:
    RowSpace() = default;
    RowSpace(Field f, std::size_t n) : field_(f), n_(n), pivot_row_(n, -1) {}

    const Field& field() const { return field_; }
    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }

    /// Adds v to the span; returns true when the dimension grew.
    bool insert(Vector v);
    /// Reduces v modulo the span in place (the result has zeros on pivots).
    void reduce(Vector& v) const;
    bool contains(Vector v) const;

    bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }
    const std::vector<Vector>& rows() const { return rows_; }
    std::vector<std::size_t> pivots() const;
    /// Coordinates that are not pivots, ascending: a basis of the quotient.
    std::vector<std::size_t> free_columns() const;

private:
    Field field_;
    std::size_t n_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::size_t> row_pivot_;
    std::vector<long> pivot_row_;
};

Vector zero_vector(const Field& f, std::size_t n);
bool is_zero_vector(const Field& f, const Vector& v);

}  // namespace tauq
