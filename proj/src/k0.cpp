#include "equirr/k0.hpp"

#include "equirr/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace equirr {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw internal_error("integer overflow in Smith normal form");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw internal_error("integer overflow in Smith normal form");
    return r;
}

IntMatrix int_identity(std::size_t n)
{
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// row_i -= q * row_j
void row_sub(IntMatrix& m, std::size_t i, std::size_t j, std::int64_t q)
{
    for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] = checked_sub(m[i][c], checked_mul(q, m[j][c]));
}

// col_i -= q * col_j
void col_sub(IntMatrix& m, std::size_t i, std::size_t j, std::int64_t q)
{
    for (auto& row : m) row[i] = checked_sub(row[i], checked_mul(q, row[j]));
}

void col_swap(IntMatrix& m, std::size_t i, std::size_t j)
{
    for (auto& row : m) std::swap(row[i], row[j]);
}

std::vector<std::int64_t> integral_coordinates(const ClassVector& v, std::size_t n)
{
    if (!v.is_integral()) throw input_error("class is not integral: " + v.to_string());
    for (std::size_t i = n; i < v.size(); ++i)
        if (v[i].numerator() != 0) throw internal_error("class involves a simple missing from k[G]");
    std::vector<std::int64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i].numerator();
    return out;
}

} // namespace

std::vector<std::int64_t> SmithForm::diagonal() const
{
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < d.size() && i < (d.empty() ? 0 : d[0].size()); ++i) out.push_back(d[i][i]);
    return out;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b)
{
    std::size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    IntMatrix c(m, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].size() != k) throw input_error("int_multiply: dimension mismatch");
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < n; ++j) c[i][j] = checked_sub(c[i][j], checked_mul(-a[i][l], b[l][j]));
    }
    return c;
}

SmithForm smith_normal_form(const IntMatrix& a)
{
    std::size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != n) throw input_error("smith_normal_form: ragged matrix");
    SmithForm s{int_identity(m), a, int_identity(n)};
    auto& d = s.d;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block goes to (t, t)
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (d[i][j] != 0 && (bi == m || std::llabs(d[i][j]) < std::llabs(d[bi][bj]))) bi = i, bj = j;
            if (bi == m) return s;
            std::swap(d[t], d[bi]);
            std::swap(s.u[t], s.u[bi]);
            col_swap(d, t, bj);
            col_swap(s.v, t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                std::int64_t q = d[i][t] / d[t][t];
                if (q) {
                    row_sub(d, i, t, q);
                    row_sub(s.u, i, t, q);
                }
                if (d[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                std::int64_t q = d[t][j] / d[t][t];
                if (q) {
                    col_sub(d, j, t, q);
                    col_sub(s.v, j, t, q);
                }
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // the pivot must divide the rest of the block
            for (std::size_t i = t + 1; i < m && clean; ++i)
                for (std::size_t j = t + 1; j < n && clean; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        row_sub(d, t, i, -1);
                        row_sub(s.u, t, i, -1);
                        clean = false;
                    }
            if (clean) break;
        }
        if (d[t][t] < 0) {
            for (auto& x : d[t]) x = -x;
            for (auto& x : s.u[t]) x = -x;
        }
    }
    return s;
}

std::optional<std::vector<Rational>> rational_solve(const IntMatrix& a, const std::vector<Rational>& b)
{
    std::size_t n = a.size();
    if (b.size() != n) throw input_error("rational_solve: dimension mismatch");
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw input_error("rational_solve: matrix is not square");
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
        m[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].numerator() == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[c], m[piv]);
        Rational inv = Rational(1) / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].numerator() == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

CartanData cartan_data(SimpleRegistry& reg, Rng& rng)
{
    const auto& g = reg.group();
    const auto& f = reg.field();
    Rep kg = regular_rep(g, f);
    chop(kg, reg, rng);
    const std::size_t n = reg.size();

    CartanData cd;
    cd.registry = &reg;
    std::vector<std::optional<Rep>> pims(n);
    cd.regular_multiplicity.assign(n, 0);
    for (const Rep& part : indecomposable_summands(kg, rng)) {
        std::size_t head = n, total = 0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t h = head_multiplicity(part, reg.simple(j));
            total += h;
            if (h) head = j;
        }
        if (total != 1) throw internal_error("summand of k[G] does not have a simple head");
        ++cd.regular_multiplicity[head];
        if (!pims[head]) pims[head] = part;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!pims[j]) throw internal_error("simple without a projective cover in k[G]");
        if (cd.regular_multiplicity[j] * reg.end_dim(j) != reg.simple(j).dim())
            throw internal_error("projective cover multiplicity in k[G] differs from dim S / dim End S");
        cd.pims.push_back(*pims[j]);
        cd.pim_classes.push_back(chop(*pims[j], reg, rng));
    }
    if (reg.size() != n) throw internal_error("registry grew after saturation");
    cd.matrix.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) cd.matrix[i][j] = cd.pim_classes[j][i].numerator();
    return cd;
}

IntMatrix cartan_matrix_via_hom(const CartanData& cd)
{
    std::size_t n = cd.size();
    IntMatrix c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t e = cd.registry->end_dim(i);
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t h = hom_dim(cd.pims[i], cd.pims[j]);
            if (h % e != 0) throw internal_error("Hom(P_i, P_j) not a multiple of End(S_i)");
            c[i][j] = static_cast<std::int64_t>(h / e);
        }
    }
    return c;
}

bool in_cartan_image(const ClassVector& v, const CartanData& cd)
{
    auto y0 = integral_coordinates(v, cd.size());
    SmithForm s = smith_normal_form(cd.matrix);
    IntMatrix col(y0.size(), std::vector<std::int64_t>(1));
    for (std::size_t i = 0; i < y0.size(); ++i) col[i][0] = y0[i];
    IntMatrix y = int_multiply(s.u, col);
    auto diag = s.diagonal();
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::int64_t d = i < diag.size() ? diag[i] : 0;
        if (d == 0 ? y[i][0] != 0 : y[i][0] % d != 0) return false;
    }
    return true;
}

std::optional<std::vector<Rational>> pim_coordinates(const ClassVector& v, const CartanData& cd)
{
    std::vector<Rational> b(cd.size());
    for (std::size_t i = 0; i < cd.size(); ++i) b[i] = v[i];
    for (std::size_t i = cd.size(); i < v.size(); ++i)
        if (v[i].numerator() != 0) return std::nullopt;
    return rational_solve(cd.matrix, b);
}

bool is_projective_class(const ClassVector& v, const CartanData& cd)
{
    integral_coordinates(v, cd.size());
    auto x = pim_coordinates(v, cd);
    if (!x) throw internal_error("Cartan matrix is singular");
    return std::all_of(x->begin(), x->end(),
                       [](const Rational& r) { return r.denominator() == 1 && r.numerator() >= 0; });
}

Rep extend_scalars(const Rep& m, const Field& target)
{
    const Embedding& emb = embedding(m.field(), target);
    std::vector<Matrix> images;
    images.reserve(m.images().size());
    for (const Matrix& a : m.images()) {
        std::vector<elem_t> e(a.entries().size());
        std::transform(a.entries().begin(), a.entries().end(), e.begin(), [&](elem_t x) { return emb(x); });
        images.emplace_back(target, a.rows(), a.cols(), std::move(e));
    }
    return Rep(m.group(), target, m.dim(), std::move(images));
}

ClassVector extend_class(const ClassVector& v, SimpleRegistry& target, Rng& rng)
{
    const SimpleRegistry* src = v.registry();
    ClassVector out(&target);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].numerator() == 0) continue;
        out = out + v[i] * chop(extend_scalars(src->simple(i), target.field()), target, rng);
    }
    return out;
}

CartesianVerdict cartesian_check(const ClassVector& v, const CartanData& base, const CartanData& extended,
                                 SimpleRegistry& target, Rng& rng)
{
    if (extended.registry != &target) throw input_error("cartesian_check: extended Cartan data uses another registry");
    CartesianVerdict out;
    out.over_base = in_cartan_image(v, base);
    out.over_extension = in_cartan_image(extend_class(v, target, rng), extended);
    return out;
}

} // namespace equirr
