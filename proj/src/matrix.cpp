#include "equirr/matrix.hpp"

#include "equirr/error.hpp"

#include <algorithm>

namespace equirr {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<elem_t> entries)
    : f_(std::move(f)), r_(rows), c_(cols), a_(std::move(entries))
{
    if (a_.size() != r_ * c_) throw input_error("matrix entry count does not match shape");
}

Matrix Matrix::identity(const Field& f, std::size_t n) { return scalar(f, n, 1); }

Matrix Matrix::scalar(const Field& f, std::size_t n, elem_t s)
{
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows, const std::vector<std::vector<elem_t>>& cols)
{
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw input_error("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<std::vector<elem_t>>& rows)
{
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw input_error("row length mismatch");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

std::vector<elem_t> Matrix::column(std::size_t j) const
{
    std::vector<elem_t> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

bool Matrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](elem_t v) { return v == 0; });
}

bool Matrix::is_identity() const
{
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > r_ || c0 + nc > c_) throw input_error("block out of range");
    Matrix b(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m)
{
    if (r0 + m.r_ > r_ || c0 + m.c_ > c_) throw input_error("block out of range");
    for (std::size_t i = 0; i < m.r_; ++i)
        for (std::size_t j = 0; j < m.c_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

std::vector<elem_t> Matrix::apply(std::span<const elem_t> v) const
{
    if (v.size() != c_) throw input_error("vector length mismatch");
    std::vector<elem_t> out(r_, 0);
    if (f_.is_prime()) {
        const std::uint64_t p = f_.characteristic();
        for (std::size_t i = 0; i < r_; ++i) {
            std::uint64_t acc = 0;
            const elem_t* rowp = a_.data() + i * c_;
            for (std::size_t j = 0; j < c_; ++j) acc += std::uint64_t(rowp[j]) * v[j];
            out[i] = static_cast<elem_t>(acc % p);
        }
        return out;
    }
    for (std::size_t i = 0; i < r_; ++i) {
        elem_t acc = 0;
        for (std::size_t j = 0; j < c_; ++j) acc = f_.add(acc, f_.mul((*this)(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

elem_t Matrix::trace() const
{
    elem_t t = 0;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t = f_.add(t, (*this)(i, i));
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.c_ != b.r_) throw input_error("matrix product dimension mismatch");
    const Field& f = a.f_;
    Matrix r(f, a.r_, b.c_);
    if (f.is_prime()) {
        const std::uint64_t p = f.characteristic();
        std::vector<std::uint64_t> acc(b.c_);
        for (std::size_t i = 0; i < a.r_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < a.c_; ++k) {
                std::uint64_t x = a(i, k);
                if (x == 0) continue;
                const elem_t* brow = b.a_.data() + k * b.c_;
                for (std::size_t j = 0; j < b.c_; ++j) acc[j] += x * brow[j];
            }
            for (std::size_t j = 0; j < b.c_; ++j) r(i, j) = static_cast<elem_t>(acc[j] % p);
        }
        return r;
    }
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t k = 0; k < a.c_; ++k) {
            elem_t x = a(i, k);
            if (x == 0) continue;
            axpy(f, r.row(i), b.row(k), x);
        }
    return r;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.r_ != b.r_ || a.c_ != b.c_) throw input_error("matrix sum dimension mismatch");
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.f_.add(a.a_[i], b.a_[i]);
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.r_ != b.r_ || a.c_ != b.c_) throw input_error("matrix difference dimension mismatch");
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.f_.sub(a.a_[i], b.a_[i]);
    return r;
}

Matrix Matrix::scaled(elem_t s) const
{
    Matrix r = *this;
    for (auto& v : r.a_) v = f_.mul(v, s);
    return r;
}

Matrix kronecker(const Matrix& a, const Matrix& b)
{
    const Field& f = a.field();
    Matrix r(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            elem_t x = a(i, j);
            if (x == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
        }
    return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b)
{
    Matrix r(a.field().valid() ? a.field() : b.field(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

Matrix power(const Matrix& m, std::uint64_t e)
{
    Matrix result = Matrix::identity(m.field(), m.rows());
    Matrix base = m;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

void axpy(const Field& f, std::span<elem_t> dst, std::span<const elem_t> src, elem_t s)
{
    if (s == 0) return;
    if (f.is_prime()) {
        const std::uint64_t p = f.characteristic();
        for (std::size_t k = 0; k < dst.size(); ++k)
            if (src[k]) dst[k] = static_cast<elem_t>((dst[k] + std::uint64_t(s) * src[k]) % p);
        return;
    }
    for (std::size_t k = 0; k < dst.size(); ++k)
        if (src[k]) dst[k] = f.add(dst[k], f.mul(s, src[k]));
}

Echelon row_echelon(Matrix m)
{
    const Field f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r) std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(r).begin());
        elem_t inv = f.inv(m(r, c));
        for (auto& v : m.row(r)) v = f.mul(v, inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            axpy(f, m.row(i), m.row(r), f.neg(m(i, c)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_echelon(m).pivots.size(); }

Matrix nullspace(const Matrix& m)
{
    const Field& f = m.field();
    auto ech = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<std::vector<elem_t>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<elem_t> v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = f.neg(ech.reduced(i, free));
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(f, m.cols(), basis);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) throw input_error("solve: row count mismatch");
    const Field& f = a.field();
    Matrix aug(f, a.rows(), a.cols() + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, a.cols(), b);
    auto ech = row_echelon(std::move(aug));
    for (auto c : ech.pivots)
        if (c >= a.cols()) return std::nullopt;
    Matrix x(f, a.cols(), b.cols());
    for (std::size_t i = 0; i < ech.pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(ech.pivots[i], j) = ech.reduced(i, a.cols() + j);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (!m.is_square()) throw input_error("inverse of a non-square matrix");
    auto x = solve(m, Matrix::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return x;
}

Poly charpoly(const Matrix& m)
{
    if (!m.is_square()) throw input_error("characteristic polynomial of a non-square matrix");
    const Field& f = m.field();
    const std::size_t n = m.rows();
    Matrix h = m;
    // similarity reduction to upper Hessenberg form
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && h(piv, j) == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            std::swap_ranges(h.row(piv).begin(), h.row(piv).end(), h.row(j + 1).begin());
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, j + 1));
        }
        elem_t inv = f.inv(h(j + 1, j));
        for (std::size_t r = j + 2; r < n; ++r) {
            elem_t u = f.mul(h(r, j), inv);
            if (u == 0) continue;
            // row_r -= u row_{j+1}; col_{j+1} += u col_r
            axpy(f, h.row(r), h.row(j + 1), f.neg(u));
            for (std::size_t i = 0; i < n; ++i) h(i, j + 1) = f.add(h(i, j + 1), f.mul(u, h(i, r)));
        }
    }
    // p_k = charpoly of the leading k x k block
    std::vector<Poly> p;
    p.reserve(n + 1);
    p.push_back(Poly::constant(f, 1));
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t c = k - 1;
        Poly next = Poly(f, {f.neg(h(c, c)), 1}) * p[k - 1];
        elem_t prod = 1;
        for (std::size_t i = c; i-- > 0;) {
            prod = f.mul(prod, h(i + 1, i));
            if (prod == 0) break;
            elem_t coef = f.mul(h(i, c), prod);
            if (coef != 0) next = next - p[i].scaled(coef);
        }
        p.push_back(std::move(next));
    }
    return p[n];
}

Matrix evaluate(const Poly& p, const Matrix& m)
{
    const Field& f = m.field();
    Matrix acc(f, m.rows(), m.cols());
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * m;
        for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) = f.add(acc(d, d), p.coeffs()[i]);
    }
    return acc;
}

void Subspace::reduce(std::vector<elem_t>& v) const
{
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        elem_t c = v[pivots_[i]];
        if (c) axpy(f_, v, basis_[i], f_.neg(c));
    }
}

bool Subspace::insert(std::vector<elem_t> v)
{
    if (v.size() != n_) throw input_error("subspace vector length mismatch");
    reduce(v);
    std::size_t piv = 0;
    while (piv < n_ && v[piv] == 0) ++piv;
    if (piv == n_) return false;
    elem_t inv = f_.inv(v[piv]);
    for (auto& x : v) x = f_.mul(x, inv);
    for (auto& b : basis_) {
        elem_t c = b[piv];
        if (c) axpy(f_, b, v, f_.neg(c));
    }
    basis_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

bool Subspace::contains(std::vector<elem_t> v) const
{
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](elem_t x) { return x == 0; });
}

std::vector<elem_t> Subspace::coordinates(const std::vector<elem_t>& v) const
{
    std::vector<elem_t> c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
}

std::vector<std::size_t> Subspace::complement() const
{
    std::vector<bool> used(n_, false);
    for (auto p : pivots_) used[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
        if (!used[i]) out.push_back(i);
    return out;
}

Matrix Subspace::as_columns() const { return Matrix::from_columns(f_, n_, basis_); }

Subspace spin(const Field& f, std::size_t n, const std::vector<std::vector<elem_t>>& seeds,
               std::span<const Matrix> gens)
{
    Subspace s(f, n);
    std::vector<std::vector<elem_t>> queue;
    for (const auto& v : seeds)
        if (s.insert(v)) queue.push_back(v);
    for (std::size_t head = 0; head < queue.size() && s.dim() < n; ++head) {
        for (const auto& g : gens) {
            auto w = g.apply(queue[head]);
            if (s.insert(w)) queue.push_back(std::move(w));
            if (s.dim() == n) break;
        }
    }
    return s;
}

} // namespace equirr
