#include "equirr/curve.hpp"
#include "equirr/error.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace equirr;
using namespace fixtures;

namespace {

// Geometric view of a closed point: a root in the splitting field GF(q^deg).
struct GeometricPoint {
    Field big;
    elem_t root = 0;
    bool at_infinity = false;
};

Poly lift(const Poly& p, const Field& big)
{
    std::vector<elem_t> c;
    for (elem_t x : p.coeffs()) c.push_back(embedding(p.field(), big)(x));
    return Poly(big, c);
}

GeometricPoint geometric_point(const Field& k, const Place& p)
{
    if (p.is_infinity()) return {k, 0, true};
    Field big = Field::make(k.characteristic(), k.degree() * p.degree());
    Rng rng(0);
    auto rs = roots(lift(p.poly(), big), rng);
    EXPECT_EQ(rs.size(), static_cast<std::size_t>(p.degree()));
    return {big, rs.front(), false};
}

// image of a finite root under s, or nullopt for infinity
std::optional<elem_t> act_on_root(const Field& k, const Field& big, const Mobius& s, elem_t r)
{
    const auto& e = embedding(k, big);
    elem_t num = big.add(big.mul(e(s.a), r), e(s.b));
    elem_t den = big.add(big.mul(e(s.c), r), e(s.d));
    if (den == 0) return std::nullopt;
    return big.div(num, den);
}

// minimal polynomial over k of an element of big
Place place_of_root(const Field& k, const Field& big, elem_t r)
{
    Poly m = Poly::constant(big, 1);
    elem_t c = r;
    do {
        m = m * Poly::linear(big, c);
        c = big.frobenius(c, k.degree());
    } while (c != r);
    const auto& e = embedding(k, big);
    std::vector<elem_t> down;
    for (elem_t x : m.coeffs()) {
        EXPECT_TRUE(e.contains(x));
        down.push_back(e.preimage(x));
    }
    return Place::finite(Poly(k, down));
}

Place image_via_roots(const Field& k, const Mobius& s, const Place& p)
{
    if (p.is_infinity()) {
        if (s.c == 0) return p;
        return rational_place(k, k.div(s.a, s.c));
    }
    auto g = geometric_point(k, p);
    auto img = act_on_root(k, g.big, s, g.root);
    if (!img) return Place::infinity();
    return place_of_root(k, g.big, *img);
}

const Mobius flip{0, 1, 1, 0}; // x -> 1/x

// Move infinity to 0 so every point can be treated as a finite root.
Mobius chart(const Field& k, const Mobius& s, bool at_infinity)
{
    return at_infinity ? compose(k, flip, compose(k, s, flip)) : s;
}

// depth v_Q(s^{-1}(x) - x) at the root, via the fixed-point polynomial of s^{-1}
int geometric_depth(const Field& k, const GeometricPoint& q, const Mobius& s)
{
    Mobius inv = inverse(k, chart(k, s, q.at_infinity));
    const Field& big = q.big;
    const auto& e = embedding(k, big);
    // (a x + b) - x (c x + d)
    Poly num(big, {e(inv.b), big.sub(e(inv.a), e(inv.d)), big.neg(e(inv.c))});
    if (num.is_zero()) return 1000;
    int v = 0;
    while (num.eval(q.root) == 0) {
        num = num / Poly::linear(big, q.root);
        ++v;
    }
    return v;
}

// derivative of s^{-1} at the root: the action on the cotangent line
elem_t geometric_cotangent(const Field& k, const GeometricPoint& q, const Mobius& s)
{
    Mobius inv = inverse(k, chart(k, s, q.at_infinity));
    const Field& big = q.big;
    const auto& e = embedding(k, big);
    elem_t det = big.sub(big.mul(e(inv.a), e(inv.d)), big.mul(e(inv.b), e(inv.c)));
    elem_t den = big.add(big.mul(e(inv.c), q.root), e(inv.d));
    return big.div(det, big.mul(den, den));
}

// residue class c(x) mod P evaluated at the root
elem_t at_root(const Poly& c, const GeometricPoint& q)
{
    if (q.at_infinity) return c.coeff(0);
    return lift(c, q.big).eval(q.root);
}

bool stabilizes_root(const Field& k, const GeometricPoint& q, const Mobius& s)
{
    auto img = act_on_root(k, q.big, chart(k, s, q.at_infinity), q.root);
    return img && *img == q.root;
}

Divisor divisor(std::initializer_list<std::pair<Place, int>> terms)
{
    Divisor d;
    for (const auto& [p, n] : terms) d.add(p, n);
    return d;
}

std::size_t element_of(const GroupPtr& g, const Mobius& m)
{
    auto i = g->index_of(Mobius::normalized(g->field(), m.a, m.b, m.c, m.d));
    EXPECT_TRUE(i);
    return *i;
}

} // namespace

TEST(Curve, PlacesUpTo)
{
    auto f3 = Field::make(3);
    auto p1 = places_up_to(f3, 1);
    ASSERT_EQ(p1.size(), 4u);
    EXPECT_TRUE(p1[0].is_infinity());
    EXPECT_EQ(places_up_to(f3, 2).size(), 4u + 3u);
    EXPECT_EQ(places_up_to(Field::make(5), 2).size(), 1u + 5u + 10u);
    EXPECT_EQ(places_up_to(Field::make(2, 2), 2).size(), 1u + 4u + 6u);
    for (const auto& p : places_up_to(Field::make(2), 4))
        if (!p.is_infinity()) EXPECT_EQ(factor(p.poly()).size(), 1u);
    EXPECT_THROW(Place::finite(Poly(f3, {2, 0, 1})), input_error);
}

TEST(Curve, MobiusOnPlaceMatchesRoots)
{
    auto f3 = Field::make(3);
    EXPECT_EQ(mobius_on_place(f3, {1, 1, 0, 1}, rational_place(f3, 0)), rational_place(f3, 1));
    EXPECT_EQ(rational_place(f3, 1).poly(), Poly(f3, {2, 1}));
    EXPECT_EQ(mobius_on_place(f3, flip, rational_place(f3, 0)), Place::infinity());
    EXPECT_EQ(mobius_on_place(f3, flip, Place::infinity()), rational_place(f3, 0));

    Rng rng(21);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}, {7u, 1u}}) {
        auto k = Field::make(p, n);
        auto places = places_up_to(k, 3);
        for (int it = 0; it < 60; ++it) {
            elem_t a = rng() % k.order(), b = rng() % k.order(), c = rng() % k.order(), d = rng() % k.order();
            if (k.sub(k.mul(a, d), k.mul(b, c)) == 0) continue;
            Mobius s = Mobius::normalized(k, a, b, c, d);
            const Place& pl = places[rng() % places.size()];
            Place img = mobius_on_place(k, s, pl);
            EXPECT_EQ(img, image_via_roots(k, s, pl)) << pl.to_string();
            EXPECT_EQ(img.degree(), pl.degree());
            EXPECT_EQ(mobius_on_place(k, inverse(k, s), img), pl);
        }
    }
}

TEST(Curve, EquivariantDivisors)
{
    auto f3 = Field::make(3);
    auto g = cyclic_translations(3);
    EXPECT_TRUE(divisor_is_equivariant(divisor({{Place::infinity(), 2}}), g));
    EXPECT_TRUE(divisor_is_equivariant(Divisor{}, g));
    Divisor bad = divisor({{rational_place(f3, 0), 1}});
    auto orbit = non_equivariant_orbit(bad, g);
    ASSERT_TRUE(orbit);
    EXPECT_EQ(orbit->size(), 3u);
    EXPECT_THROW(rr_action_rep(g, bad), input_error);
    Divisor good = bad;
    good.add(rational_place(f3, 1), 1);
    good.add(rational_place(f3, 2), 1);
    EXPECT_TRUE(divisor_is_equivariant(good, g));
}

TEST(Curve, PrincipalDivisorsHaveDegreeZero)
{
    Rng rng(22);
    for (auto [p, n] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
        auto k = Field::make(p, n);
        for (int it = 0; it < 60; ++it) {
            std::vector<elem_t> a(1 + rng() % 6), b(1 + rng() % 6);
            for (auto& x : a) x = rng() % k.order();
            for (auto& x : b) x = rng() % k.order();
            a.back() = 1;
            b.back() = 1;
            RatFunc f(Poly(k, a), Poly(k, b));
            Divisor d = principal_divisor(f);
            EXPECT_EQ(d.degree(), 0);
            for (const auto& [pl, m] : d.terms()) EXPECT_EQ(valuation(f, pl), m);
        }
    }
}

TEST(Curve, RiemannRochBasis)
{
    auto f3 = Field::make(3);
    auto two_inf = rr_space_basis(f3, divisor({{Place::infinity(), 2}}));
    ASSERT_EQ(two_inf.size(), 3u);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(two_inf[j], RatFunc(Poly::monomial(f3, 1, j)));
    auto zero_deg = rr_space_basis(f3, divisor({{rational_place(f3, 0), 1}, {rational_place(f3, 2), -1}}));
    ASSERT_EQ(zero_deg.size(), 1u);
    EXPECT_EQ(zero_deg[0], RatFunc(Poly(f3, {1, 1}), Poly::x(f3)));
    EXPECT_TRUE(rr_space_basis(f3, divisor({{rational_place(f3, 0), -1}})).empty());
    EXPECT_THROW(rr_space_basis(f3, divisor({{Place::infinity(), -2}})), input_error);

    Rng rng(23);
    for (auto [p, n] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
        auto k = Field::make(p, n);
        auto places = places_up_to(k, 2);
        for (int it = 0; it < 60; ++it) {
            Divisor d;
            for (int t = 0; t < 3; ++t) d.add(places[rng() % places.size()], static_cast<int>(rng() % 7) - 3);
            if (d.degree() < -1) continue;
            auto s = rr_space(k, d);
            EXPECT_EQ(static_cast<int>(s.dim()), std::max(0, d.degree() + 1));
            std::vector<std::vector<elem_t>> rows;
            for (const auto& fn : s.basis) {
                std::set<Place> check;
                for (const auto& [pl, m] : d.terms()) check.insert(pl);
                Divisor div = principal_divisor(fn);
                for (const auto& [pl, m] : div.terms()) check.insert(pl);
                for (const auto& pl : check) EXPECT_GE(valuation(fn, pl) + d.coefficient(pl), 0) << d.to_string();
                RatFunc poly = fn * RatFunc(s.a, s.b);
                ASSERT_TRUE(poly.is_polynomial());
                std::vector<elem_t> row(s.dim(), 0);
                for (std::size_t i = 0; i < s.dim(); ++i) row[i] = poly.num().coeff(static_cast<int>(i));
                rows.push_back(row);
            }
            if (!rows.empty()) EXPECT_EQ(rank(Matrix::from_rows(k, s.dim(), rows)), s.dim());
        }
    }
}

TEST(Curve, TranslationActionOnPolynomials)
{
    auto f3 = Field::make(3);
    auto g = cyclic_translations(3);
    Rep r = rr_action_rep(g, divisor({{Place::infinity(), 2}}));
    // (x -> x+1) sends f to f(x - 1): 1, x - 1, x^2 - 2x + 1
    std::size_t s = element_of(g, {1, 1, 0, 1});
    EXPECT_EQ(r.image(s), Matrix(f3, 3, 3, {1, 2, 1, 0, 1, 1, 0, 0, 1}));
    Rng rng(24);
    SimpleRegistry reg(g, f3);
    auto cls = chop(r, reg, rng);
    EXPECT_EQ(cls, chop(regular_rep(g, f3), reg, rng));
    EXPECT_EQ(cls[0], Rational(3));
    EXPECT_TRUE(is_projective(r));
    EXPECT_FALSE(is_projective(rr_action_rep(g, divisor({{Place::infinity(), 1}}))));
    // trivial group acts by identities
    auto one = FiniteGroup::close_generators(f3, std::vector<Mobius>{});
    Rep t = rr_action_rep(one, divisor({{rational_place(f3, 0), 5}}));
    EXPECT_EQ(t.dim(), 6u);
    EXPECT_TRUE(t.image(0).is_identity());
}

TEST(Curve, TranslationRamification)
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        auto g = cyclic_translations(p);
        auto t = ramification_table(g);
        ASSERT_EQ(t.orbits.size(), 1u);
        EXPECT_TRUE(t.orbits[0][0].is_infinity());
        const auto& d = t.data[0];
        EXPECT_EQ(d.filtration, (std::vector<std::size_t>{p, p, 1}));
        EXPECT_EQ(d.e, p);
        EXPECT_EQ(d.e_w, p);
        EXPECT_EQ(d.e_t, 1u);
        EXPECT_EQ(d.f, 1u);
        EXPECT_TRUE(is_weakly_ramified(t));
        EXPECT_FALSE(is_tame(t));
        EXPECT_EQ(different_degree(t), 2 * static_cast<std::int64_t>(p) - 2);
        EXPECT_TRUE(riemann_hurwitz_check(t));
    }
}

TEST(Curve, KummerRamification)
{
    for (auto [q, m] : {std::pair{7u, 3u}, {5u, 4u}, {7u, 6u}}) {
        auto g = kummer(q, m);
        auto k = Field::make(q);
        auto t = ramification_table(g);
        ASSERT_EQ(t.orbits.size(), 2u);
        EXPECT_TRUE(t.orbits[0][0].is_infinity());
        EXPECT_EQ(t.orbits[1][0], rational_place(k, 0));
        for (const auto& d : t.data) {
            EXPECT_EQ(d.e, m);
            EXPECT_EQ(d.e_t, m);
            EXPECT_EQ(d.e_w, 1u);
        }
        EXPECT_TRUE(is_tame(t));
        EXPECT_TRUE(riemann_hurwitz_check(t));
        // x -> zeta x: t = x moves to zeta^{-1} x at 0 and t = 1/x to zeta / x at infinity
        elem_t zeta = k.pow(k.primitive_element(), (q - 1) / m);
        std::size_t s = element_of(g, {zeta, 0, 0, 1});
        const auto& at0 = t.data[1];
        auto local = std::lower_bound(at0.decomposition.elements.begin(), at0.decomposition.elements.end(), s) -
                     at0.decomposition.elements.begin();
        EXPECT_EQ(at0.cotangent[local], Poly::constant(k, k.inv(zeta)));
        EXPECT_EQ(t.data[0].cotangent[local], Poly::constant(k, zeta));
        // the n = 1 fiber at 0 is the inverse cotangent
        Rep fib = fiber_character(at0, 1);
        EXPECT_EQ(fib.image(local), Matrix(k, 1, 1, {zeta}));
        Rep triv = fiber_character(at0, 0);
        for (const auto& img : triv.images()) EXPECT_TRUE(img.is_identity());
    }
}

TEST(Curve, ResidualDegreeTwo)
{
    auto k = Field::make(3);
    auto g = FiniteGroup::close_generators(k, std::vector<Mobius>{{2, 0, 0, 1}});
    auto d = ramification_datum(g, Place::finite(Poly(k, {1, 0, 1})));
    EXPECT_EQ(d.decomposition.order(), 2u);
    EXPECT_EQ(d.inertia.order(), 1u);
    EXPECT_EQ(d.f, 2u);
    EXPECT_EQ(d.quotient_degree(), 1);
    EXPECT_FALSE(d.is_ramified());
}

// Random subgroups of PGL_2: filtrations, inertia and cotangents against the
// geometric computation at a root, Riemann-Hurwitz, and orbit constancy.
TEST(Curve, RandomGroupsAgainstGeometry)
{
    Rng rng(25);
    int checked = 0;
    for (int it = 0; it < 160; ++it) {
        static const std::vector<std::pair<std::uint32_t, std::uint32_t>> fields{{2, 1}, {3, 1}, {2, 2}, {5, 1},
                                                                                  {7, 1}, {3, 2}, {2, 3}};
        auto [p, n] = fields[rng() % fields.size()];
        auto k = Field::make(p, n);
        auto g = random_pgl2_group(rng, k, 1 + rng() % 2);
        if (g->order() > 120) continue;
        auto t = ramification_table(g);
        EXPECT_TRUE(riemann_hurwitz_check(t)) << "order " << g->order() << " over GF(" << k.order() << ")";
        ++checked;
        std::size_t orbit_total = 0;
        for (std::size_t o = 0; o < t.orbits.size(); ++o) {
            const auto& rep = t.data[o];
            EXPECT_EQ(t.orbits[o].size() * rep.decomposition.order(), g->order());
            for (const auto& pl : t.orbits[o]) {
                auto d = ramification_datum(g, pl);
                EXPECT_EQ(d.e, rep.e);
                EXPECT_EQ(d.e_w, rep.e_w);
                EXPECT_EQ(d.f, rep.f);
                EXPECT_EQ(d.filtration, rep.filtration);
                orbit_total += pl.degree();
                auto q = geometric_point(k, pl);
                std::size_t stab = 0;
                for (std::size_t s = 0; s < g->order(); ++s) stab += stabilizes_root(k, q, g->mobius(s));
                EXPECT_EQ(stab, d.e);
                auto inertia = d.inertia_in_group();
                std::set<std::size_t> wild_orders;
                for (std::size_t j = 0; j < inertia.size(); ++j) {
                    const Mobius& s = g->mobius(inertia[j]);
                    EXPECT_TRUE(stabilizes_root(k, q, s));
                    std::size_t dec_local = d.inertia.elements[j];
                    elem_t a = at_root(d.cotangent[dec_local], q);
                    EXPECT_EQ(a, geometric_cotangent(k, q, s));
                    int depth = geometric_depth(k, q, s);
                    bool in_wild = d.wild.contains(j);
                    EXPECT_EQ(in_wild, j == 0 || depth >= 2);
                    // kernel of the cotangent character is the wild group
                    EXPECT_EQ(in_wild, a == 1);
                    EXPECT_EQ(g->element_order(inertia[j]) % p == 0, in_wild && j != 0);
                }
                // the character on I/G_1 has order e_t
                Rep cot = inertia_cotangent_power(d, static_cast<int>(d.e_t));
                for (const auto& img : cot.images()) EXPECT_TRUE(img.is_identity());
                if (d.e_t > 1) {
                    Rep once = inertia_cotangent_power(d, 1);
                    std::size_t max_order = 1;
                    for (std::size_t j = 0; j < inertia.size(); ++j) {
                        std::size_t ord = 1;
                        Matrix m = once.image(j);
                        while (!power(m, ord).is_identity()) ++ord;
                        max_order = std::max(max_order, ord);
                    }
                    EXPECT_EQ(max_order, d.e_t);
                }
                // semilinear action is a homomorphism (checked by Rep) for a few powers
                for (int e : {-2, -1, 1, 3}) EXPECT_EQ(cotangent_power(d, e).dim(), static_cast<std::size_t>(d.degree));
            }
        }
        (void)orbit_total;
    }
    EXPECT_GE(checked, 100);
}

TEST(Curve, ActionRepHomomorphism)
{
    Rng rng(26);
    for (int it = 0; it < 40; ++it) {
        auto k = Field::make(it % 2 ? 3 : 5);
        auto g = random_pgl2_group(rng, k, 1);
        if (g->order() > 60) continue;
        // orbit sums of random places with a common coefficient
        auto places = places_up_to(k, 2);
        Divisor d;
        for (int j = 0; j < 2; ++j) {
            int n = static_cast<int>(rng() % 5) - 1;
            for (const auto& pl : place_orbit(g, places[rng() % places.size()])) d.set(pl, n);
        }
        if (d.degree() < -1) continue;
        Rep r = rr_action_rep(g, d);
        EXPECT_EQ(static_cast<int>(r.dim()), std::max(0, d.degree() + 1));
        for (std::size_t a = 0; a < g->order(); ++a)
            for (std::size_t b = 0; b < g->order(); b += 3) EXPECT_EQ(r.image(g->mul(a, b)), r.image(a) * r.image(b));
    }
}
