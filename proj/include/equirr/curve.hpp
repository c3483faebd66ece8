#pragma once

#include "equirr/group.hpp"
#include "equirr/poly.hpp"
#include "equirr/rep.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace equirr {

/* Closed point of P^1: a monic irreducible polynomial, or infinity.
 * Ordering puts infinity first, then polynomials by degree and
 * coefficients from the top. */
class Place {
public:
    Place() = default; // infinity
    static Place infinity() { return Place(); }
    /* Throws input_error unless p is monic irreducible. */
    static Place finite(Poly p);

    bool is_infinity() const { return !poly_; }
    const Poly& poly() const { return *poly_; }
    int degree() const { return poly_ ? poly_->degree() : 1; }
    std::string to_string() const;

    friend bool operator==(const Place& a, const Place& b) { return a.poly_ == b.poly_; }
    friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
    friend bool operator<(const Place& a, const Place& b);

private:
    std::optional<Poly> poly_;
};

/* x - a as a place. */
Place rational_place(const Field& f, elem_t a);

class Divisor {
public:
    int coefficient(const Place& p) const;
    void set(const Place& p, int n);
    void add(const Place& p, int n) { set(p, coefficient(p) + n); }
    int degree() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Place, int>& terms() const { return terms_; }
    std::string to_string() const;

    friend bool operator==(const Divisor&, const Divisor&) = default;

private:
    std::map<Place, int> terms_;
};

int valuation(const RatFunc& f, const Place& p);
Divisor principal_divisor(const RatFunc& f);

/* f(m(x)). */
RatFunc substitute(const RatFunc& f, const Mobius& m);

/* Infinity, then the monic irreducibles of degree 1..bound. */
std::vector<Place> places_up_to(const Field& f, int bound);

/* Image of the closed point p under the Mobius map s. */
Place mobius_on_place(const Field& f, const Mobius& s, const Place& p);

/* Orbit of p under g (a PGL_2 group), sorted. */
std::vector<Place> place_orbit(const GroupPtr& g, const Place& p);

/* An orbit on which d is not constant, if any. */
std::optional<std::vector<Place>> non_equivariant_orbit(const Divisor& d, const GroupPtr& g);
bool divisor_is_equivariant(const Divisor& d, const GroupPtr& g);

/* Local data at one closed point.  k(P) is modelled as k[x]/(residue_modulus);
 * every element of the decomposition group acts on it by x -> galois_x and on
 * the cotangent line by the unit `cotangent`, both residues mod the modulus.
 * `decomposition` is a subgroup of G, `inertia` a subgroup of the
 * decomposition group and `wild` a subgroup of the inertia group. */
struct RamificationDatum {
    std::optional<Place> place; // absent for abstract data
    int degree = 1;             // [k(P):k]
    Subgroup decomposition, inertia, wild;
    std::vector<std::size_t> filtration; // |G_{P,s}| for s = 0, 1, ... down to 1
    std::size_t e = 1, e_t = 1, e_w = 1, f = 1;
    Poly residue_modulus;
    std::vector<Poly> galois_x;  // indexed by decomposition-group element
    std::vector<Poly> cotangent; // indexed by decomposition-group element

    const GroupPtr& group() const { return decomposition.parent; }
    bool is_ramified() const { return e > 1; }
    int quotient_degree() const { return degree / static_cast<int>(f); }
    /* Elements of the inertia group as indices of G. */
    std::vector<std::size_t> inertia_in_group() const;
};

/* Ramification datum of a place of P^1 under a PGL_2 group. */
RamificationDatum ramification_datum(const GroupPtr& g, const Place& p);

/* Semilinear action of the decomposition group on (m_P/m_P^2)^{e}, as a
 * representation over k of dimension [k(P):k]. */
Rep cotangent_power(const RamificationDatum& datum, int e);
/* The same, restricted to the inertia group, where it is k(P)-linear. */
Rep inertia_cotangent_power(const RamificationDatum& datum, int e);
/* Fiber of L(D) at P: (m_P/m_P^2)^{-n_P} as a decomposition-group module. */
Rep fiber_character(const RamificationDatum& datum, int n_p);

/* Ramified orbits of a PGL_2 group, each with the datum at its least place. */
struct RamificationTable {
    GroupPtr group;
    std::vector<std::vector<Place>> orbits; // sorted, representative first
    std::vector<RamificationDatum> data;
};
RamificationTable ramification_table(const GroupPtr& g);

bool is_tame(const RamificationTable& t);
bool is_weakly_ramified(const RamificationTable& t);
/* Sum over ramified places of deg P * sum_s (|G_{P,s}| - 1). */
std::int64_t different_degree(const RamificationTable& t);
bool riemann_hurwitz_check(const RamificationTable& t);

/* L(D) on P^1: basis x^j B / A for j = 0..deg D, where A collects the
 * positive finite part of D and B the negative part. */
struct RRSpace {
    Divisor divisor;
    Poly a, b;
    std::vector<RatFunc> basis;
    std::size_t dim() const { return basis.size(); }
};
/* Throws input_error when deg D < -1. */
RRSpace rr_space(const Field& f, const Divisor& d);
std::vector<RatFunc> rr_space_basis(const Field& f, const Divisor& d);
/* f -> f o s^{-1} in the basis above.  D must be G-equivariant. */
Rep rr_action_rep(const GroupPtr& g, const Divisor& d);

} // namespace equirr
