#pragma once

#include "equirr/field.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace equirr {

using Rng = std::mt19937_64;

/* Univariate polynomial over a finite field, coefficients low-to-high
 * with no trailing zeros.  The zero polynomial has degree -1. */
class Poly {
public:
    Poly() = default;
    explicit Poly(Field f) : f_(std::move(f)) {}
    Poly(Field f, std::vector<elem_t> coeffs);

    static Poly constant(const Field& f, elem_t c) { return Poly(f, {c}); }
    static Poly x(const Field& f) { return Poly(f, {0, 1}); }
    static Poly monomial(const Field& f, elem_t c, int degree);
    /* x - a */
    static Poly linear(const Field& f, elem_t a) { return Poly(f, {f.neg(a), 1}); }

    const Field& field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<elem_t>& coeffs() const { return c_; }
    elem_t coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    elem_t leading() const { return c_.empty() ? 0 : c_.back(); }

    elem_t eval(elem_t a) const;
    Poly monic() const;
    Poly derivative() const;
    Poly scaled(elem_t s) const;
    Poly shifted(int k) const; // times x^k

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /* Strict weak order: degree first, then coefficients from the top. */
    friend bool operator<(const Poly& a, const Poly& b);

    std::string to_string() const;

private:
    void trim();
    Field f_;
    std::vector<elem_t> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
/* Returns (g, s, t) with s a + t b = g, g monic. */
struct ExtGcd {
    Poly g, s, t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);
Poly powmod(Poly base, std::uint64_t e, const Poly& m);
/* Inverse of a modulo m; throws if not coprime. */
Poly invmod(const Poly& a, const Poly& m);
/* f(g(x)). */
Poly compose(const Poly& f, const Poly& g);

bool is_irreducible(const Poly& f);

struct Factor {
    Poly poly;
    int multiplicity = 0;
};

/* Monic irreducible factorization (squarefree, distinct-degree,
 * Cantor-Zassenhaus).  Output is sorted, so the order does not depend on
 * the random choices. */
std::vector<Factor> factor(const Poly& f, Rng& rng);
std::vector<Factor> factor(const Poly& f);

/* Distinct roots in the coefficient field, ascending by code. */
std::vector<elem_t> roots(const Poly& f, Rng& rng);

/* Lexicographically least monic irreducible of the given degree. */
Poly least_irreducible(const Field& f, int degree);

/* All monic irreducible polynomials of the given degree, ascending. */
std::vector<Poly> monic_irreducibles(const Field& f, int degree);

/* Rational function num/den with gcd 1 and monic denominator. */
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(Poly num);
    RatFunc(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Field& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    RatFunc pow(int e) const;

    std::string to_string() const;

private:
    void normalize();
    Poly num_, den_;
};

/* Multiplicity of the monic irreducible p in a nonzero polynomial. */
int multiplicity(Poly a, const Poly& p);

} // namespace equirr
