#include "equirr/matrix.hpp"

#include <gtest/gtest.h>

using namespace equirr;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng, int zero_bias = 0)
{
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = (zero_bias && rng() % zero_bias) ? 0 : static_cast<elem_t>(rng() % f.order());
    return m;
}

// determinant by Laplace expansion, independent of the elimination code
elem_t laplace_det(const Field& f, const std::vector<std::vector<elem_t>>& a)
{
    const std::size_t n = a.size();
    if (n == 0) return 1;
    elem_t d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<elem_t>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<elem_t> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        elem_t t = f.mul(a[0][j], laplace_det(f, minor));
        d = (j % 2) ? f.sub(d, t) : f.add(d, t);
    }
    return d;
}

} // namespace

TEST(Matrix, SmallFacts)
{
    auto f = Field::make(5);
    EXPECT_EQ(rank(Matrix::identity(f, 3)), 3u);
    EXPECT_EQ(nullspace(Matrix(f, 2, 2)).cols(), 2u);
    Matrix d(f, 2, 2, {1, 0, 0, 2});
    // (x-1)(x-2) = x^2 - 3x + 2
    EXPECT_EQ(charpoly(d), Poly(f, {2, 2, 1}));
}

TEST(Matrix, CharpolyMatchesDeterminant)
{
    for (auto [p, n] : {std::pair{3u, 1u}, {2u, 2u}, {7u, 1u}}) {
        auto f = Field::make(p, n);
        Rng rng(p + n);
        for (int it = 0; it < 40; ++it) {
            std::size_t sz = 1 + rng() % 5;
            auto m = random_matrix(f, sz, sz, rng);
            auto cp = charpoly(m);
            EXPECT_EQ(cp.degree(), static_cast<int>(sz));
            EXPECT_TRUE(evaluate(cp, m).is_zero()); // Cayley-Hamilton
            for (elem_t t = 0; t < f.order(); ++t) {
                std::vector<std::vector<elem_t>> a(sz, std::vector<elem_t>(sz));
                for (std::size_t i = 0; i < sz; ++i)
                    for (std::size_t j = 0; j < sz; ++j) a[i][j] = f.sub(i == j ? t : 0, m(i, j));
                EXPECT_EQ(cp.eval(t), laplace_det(f, a));
            }
        }
    }
}

TEST(Matrix, RankNullitySolve)
{
    auto f = Field::make(3, 2);
    Rng rng(11);
    for (int it = 0; it < 100; ++it) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        auto m = random_matrix(f, r, c, rng, 3);
        auto ns = nullspace(m);
        EXPECT_EQ(rank(m) + ns.cols(), c);
        EXPECT_TRUE((m * ns).is_zero());
        auto x = random_matrix(f, c, 2, rng);
        auto b = m * x;
        auto sol = solve(m, b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(m * *sol, b);
        if (r == c) {
            auto inv = inverse(m);
            EXPECT_EQ(inv.has_value(), rank(m) == r);
            if (inv) EXPECT_TRUE((m * *inv).is_identity());
        }
    }
}

TEST(Matrix, SpinIsInvariant)
{
    auto f = Field::make(2);
    // permutation matrix of a 4-cycle; the all-ones vector spans an invariant line
    Matrix c(f, 4, 4);
    for (std::size_t i = 0; i < 4; ++i) c((i + 1) % 4, i) = 1;
    std::vector<Matrix> gens{c};
    auto s = spin(f, 4, {{1, 1, 1, 1}}, gens);
    EXPECT_EQ(s.dim(), 1u);
    auto t = spin(f, 4, {{1, 0, 0, 0}}, gens);
    EXPECT_EQ(t.dim(), 4u);
    auto u = spin(f, 4, {{1, 1, 0, 0}}, gens);
    EXPECT_EQ(u.dim(), 3u); // augmentation submodule
    for (const auto& v : u.basis()) EXPECT_TRUE(u.contains(c.apply(v)));
}
