#pragma once

#include "equirr/field.hpp"
#include "equirr/poly.hpp"

#include <optional>
#include <span>
#include <vector>

namespace equirr {

/* Dense row-major matrix over a finite field.  Matrices act on column
 * vectors from the left. */
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols, 0) {}
    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<elem_t> entries);

    static Matrix identity(const Field& f, std::size_t n);
    static Matrix scalar(const Field& f, std::size_t n, elem_t s);
    /* Matrix whose columns are the given vectors (each of length rows). */
    static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<std::vector<elem_t>>& cols);
    static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<std::vector<elem_t>>& rows);

    const Field& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool is_square() const { return r_ == c_; }

    elem_t& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    elem_t operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    std::span<elem_t> row(std::size_t i) { return {a_.data() + i * c_, c_}; }
    std::span<const elem_t> row(std::size_t i) const { return {a_.data() + i * c_, c_}; }
    std::vector<elem_t> column(std::size_t j) const;
    const std::vector<elem_t>& entries() const { return a_; }
    std::span<elem_t> data() { return a_; }

    bool is_zero() const;
    bool is_identity() const;
    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
    std::vector<elem_t> apply(std::span<const elem_t> v) const;
    elem_t trace() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(elem_t s) const;
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.f_ == b.f_ && a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    Field f_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<elem_t> a_;
};

Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix power(const Matrix& m, std::uint64_t e);

/* dst += s * src over the field. */
void axpy(const Field& f, std::span<elem_t> dst, std::span<const elem_t> src, elem_t s);

struct Echelon {
    Matrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};
/* Reduced row echelon form; pivoting picks the first nonzero entry. */
Echelon row_echelon(Matrix m);

std::size_t rank(const Matrix& m);
/* Basis of the right kernel {v : M v = 0}, as columns. */
Matrix nullspace(const Matrix& m);
/* Some X with A X = B, if any. */
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
Poly charpoly(const Matrix& m);
Matrix evaluate(const Poly& p, const Matrix& m);

/* Subspace of F^n kept in reduced echelon form. */
class Subspace {
public:
    Subspace(Field f, std::size_t ambient) : f_(std::move(f)), n_(ambient) {}

    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient_dim() const { return n_; }
    const Field& field() const { return f_; }

    /* Reduce v against the basis in place. */
    void reduce(std::vector<elem_t>& v) const;
    /* Add v if it is new; returns whether the dimension grew. */
    bool insert(std::vector<elem_t> v);
    bool contains(std::vector<elem_t> v) const;
    /* Coordinates of a vector inside the subspace (must lie in it). */
    std::vector<elem_t> coordinates(const std::vector<elem_t>& v) const;

    const std::vector<std::vector<elem_t>>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    /* Standard basis indices outside the pivot set. */
    std::vector<std::size_t> complement() const;
    /* Basis vectors as matrix columns. */
    Matrix as_columns() const;

private:
    Field f_;
    std::size_t n_;
    std::vector<std::vector<elem_t>> basis_; // rows with pivot 1, cleared pivot columns
    std::vector<std::size_t> pivots_;
};

/* Smallest subspace containing the seeds and stable under the matrices. */
Subspace spin(const Field& f, std::size_t n, const std::vector<std::vector<elem_t>>& seeds,
               std::span<const Matrix> gens);

} // namespace equirr
