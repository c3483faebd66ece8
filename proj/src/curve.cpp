#include "equirr/curve.hpp"

#include "equirr/error.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace equirr {

namespace {

Poly power(const Poly& p, int e)
{
    Poly out = Poly::constant(p.field(), 1);
    for (int i = 0; i < e; ++i) out = out * p;
    return out;
}

/* sum_i g_i (a x + b)^i (c x + d)^{deg - i}: numerator of g(m(x)) over (c x + d)^deg. */
Poly homogenized(const Poly& g, int deg, const Mobius& m)
{
    const Field& k = g.field();
    Poly lin_num(k, {m.b, m.a}), lin_den(k, {m.d, m.c});
    Poly out(k);
    for (int i = 0; i <= g.degree(); ++i) {
        if (g.coeff(i) == 0) continue;
        out = out + (power(lin_num, i) * power(lin_den, deg - i)).scaled(g.coeff(i));
    }
    return out;
}

Poly residue_modulus_of(const Field& k, const Place& p)
{
    return p.is_infinity() ? Poly::x(k) : p.poly();
}

/* Class of a function without pole at p in k(P) = k[x]/(modulus). */
Poly residue_at(const RatFunc& u, const Place& p, const Field& k)
{
    if (p.is_infinity()) {
        int dn = u.num().degree(), dd = u.den().degree();
        if (u.is_zero() || dn < dd) return Poly(k);
        if (dn > dd) throw internal_error("residue_at: pole at infinity");
        return Poly::constant(k, k.div(u.num().leading(), u.den().leading()));
    }
    const Poly& m = p.poly();
    Poly den = u.den() % m;
    if (den.is_zero()) throw internal_error("residue_at: pole at " + p.to_string());
    return (u.num() % m) * invmod(den, m) % m;
}

RatFunc uniformizer(const Field& k, const Place& p)
{
    return p.is_infinity() ? RatFunc(Poly::constant(k, 1), Poly::x(k)) : RatFunc(p.poly());
}

Poly power_mod(const Poly& base, int e, const Poly& m)
{
    if (e >= 0) return powmod(base, static_cast<std::uint64_t>(e), m);
    return powmod(invmod(base, m), static_cast<std::uint64_t>(-static_cast<std::int64_t>(e)), m);
}

} // namespace

Place Place::finite(Poly p)
{
    if (!p.is_monic() || p.degree() < 1 || !is_irreducible(p))
        throw input_error("not a monic irreducible polynomial: " + p.to_string());
    Place out;
    out.poly_ = std::move(p);
    return out;
}

std::string Place::to_string() const
{
    return poly_ ? poly_->to_string() : "inf";
}

bool operator<(const Place& a, const Place& b)
{
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
    return a.poly() < b.poly();
}

Place rational_place(const Field& f, elem_t a)
{
    return Place::finite(Poly::linear(f, a));
}

int Divisor::coefficient(const Place& p) const
{
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
}

void Divisor::set(const Place& p, int n)
{
    if (n == 0) terms_.erase(p);
    else terms_[p] = n;
}

int Divisor::degree() const
{
    int d = 0;
    for (const auto& [p, n] : terms_) d += n * p.degree();
    return d;
}

std::string Divisor::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, n] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << n << "*(" << p.to_string() << ")";
    }
    return os.str();
}

int valuation(const RatFunc& f, const Place& p)
{
    if (f.is_zero()) throw input_error("valuation of the zero function");
    if (p.is_infinity()) return f.den().degree() - f.num().degree();
    return multiplicity(f.num(), p.poly()) - multiplicity(f.den(), p.poly());
}

Divisor principal_divisor(const RatFunc& f)
{
    if (f.is_zero()) throw input_error("divisor of the zero function");
    Divisor d;
    if (f.num().degree() > 0)
        for (const auto& fac : factor(f.num())) d.add(Place::finite(fac.poly), fac.multiplicity);
    if (f.den().degree() > 0)
        for (const auto& fac : factor(f.den())) d.add(Place::finite(fac.poly), -fac.multiplicity);
    d.add(Place::infinity(), f.den().degree() - f.num().degree());
    return d;
}

RatFunc substitute(const RatFunc& f, const Mobius& m)
{
    if (f.is_zero()) return f;
    const Field& k = f.field();
    int dn = f.num().degree(), dd = f.den().degree();
    Poly num = homogenized(f.num(), dn, m), den = homogenized(f.den(), dd, m);
    Poly lin(k, {m.d, m.c});
    if (dd > dn) num = num * power(lin, dd - dn);
    else den = den * power(lin, dn - dd);
    return RatFunc(num, den);
}

std::vector<Place> places_up_to(const Field& f, int bound)
{
    std::vector<Place> out{Place::infinity()};
    for (int d = 1; d <= bound; ++d)
        for (auto& p : monic_irreducibles(f, d)) out.push_back(Place::finite(std::move(p)));
    return out;
}

Place mobius_on_place(const Field& f, const Mobius& s, const Place& p)
{
    if (p.is_infinity()) {
        if (s.c == 0) return p;
        return rational_place(f, f.div(s.a, s.c));
    }
    // the roots of P move to the roots of P o s^{-1}
    Mobius inv = inverse(f, s);
    const int d = p.degree();
    Poly n = homogenized(p.poly(), d, inv);
    if (n.degree() == d) return Place::finite(n.monic());
    if (d == 1) return Place::infinity();
    throw internal_error("mobius_on_place: degree dropped for " + p.to_string());
}

std::vector<Place> place_orbit(const GroupPtr& g, const Place& p)
{
    if (!g->is_pgl2()) throw input_error("place_orbit needs a PGL_2 group");
    std::set<Place> seen;
    for (std::size_t s = 0; s < g->order(); ++s) seen.insert(mobius_on_place(g->field(), g->mobius(s), p));
    return {seen.begin(), seen.end()};
}

std::optional<std::vector<Place>> non_equivariant_orbit(const Divisor& d, const GroupPtr& g)
{
    for (const auto& [p, n] : d.terms()) {
        auto orbit = place_orbit(g, p);
        for (const auto& q : orbit)
            if (d.coefficient(q) != n) return orbit;
    }
    return std::nullopt;
}

bool divisor_is_equivariant(const Divisor& d, const GroupPtr& g)
{
    return !non_equivariant_orbit(d, g);
}

std::vector<std::size_t> RamificationDatum::inertia_in_group() const
{
    std::vector<std::size_t> out;
    for (std::size_t i : inertia.elements) out.push_back(decomposition.elements[i]);
    return out;
}

RamificationDatum ramification_datum(const GroupPtr& g, const Place& p)
{
    if (!g->is_pgl2()) throw input_error("ramification_datum needs a PGL_2 group");
    const Field& k = g->field();
    RamificationDatum r;
    r.place = p;
    r.degree = p.degree();
    r.residue_modulus = residue_modulus_of(k, p);

    std::vector<std::size_t> stab;
    for (std::size_t s = 0; s < g->order(); ++s)
        if (mobius_on_place(k, g->mobius(s), p) == p) stab.push_back(s);
    r.decomposition = make_subgroup(g, stab);

    const RatFunc t = uniformizer(k, p);
    const Poly x_mod = Poly::x(k) % r.residue_modulus;
    constexpr int unbounded = std::numeric_limits<int>::max();
    std::vector<std::size_t> inertia_local;
    std::vector<int> depth; // v_P(t o s^{-1} - t) per inertia element
    for (std::size_t i = 0; i < stab.size(); ++i) {
        Mobius inv = inverse(k, g->mobius(stab[i]));
        RatFunc moved = substitute(t, inv);
        r.galois_x.push_back(p.is_infinity() ? Poly(k) : residue_at(substitute(RatFunc(Poly::x(k)), inv), p, k));
        r.cotangent.push_back(residue_at(moved / t, p, k));
        if (r.galois_x.back() == x_mod) {
            inertia_local.push_back(i);
            RatFunc diff = moved - t;
            depth.push_back(diff.is_zero() ? unbounded : valuation(diff, p));
        }
    }
    r.inertia = make_subgroup(r.decomposition.group, inertia_local);

    r.filtration.push_back(inertia_local.size());
    std::vector<std::size_t> wild_local;
    for (int s = 1; r.filtration.back() > 1; ++s) {
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < depth.size(); ++j)
            if (depth[j] >= s + 1) members.push_back(j);
        if (s == 1) wild_local = members;
        r.filtration.push_back(members.size());
    }
    if (wild_local.empty()) wild_local.push_back(0); // trivial inertia
    r.wild = make_subgroup(r.inertia.group, wild_local);

    r.e = r.inertia.order();
    r.e_w = r.wild.order();
    r.e_t = r.e / r.e_w;
    r.f = r.decomposition.order() / r.e;
    if (r.degree % static_cast<int>(r.f) != 0) throw internal_error("residual degree does not divide deg P");
    return r;
}

Rep cotangent_power(const RamificationDatum& datum, int e)
{
    const Poly& m = datum.residue_modulus;
    const Field& k = m.field();
    const auto d = static_cast<std::size_t>(datum.degree);
    std::vector<Matrix> images;
    for (std::size_t i = 0; i < datum.decomposition.order(); ++i) {
        Poly unit = power_mod(datum.cotangent[i], e, m);
        Matrix a(k, d, d);
        Poly xj = Poly::constant(k, 1);
        for (std::size_t j = 0; j < d; ++j) {
            Poly col = xj * unit % m;
            for (std::size_t r = 0; r < d; ++r) a(r, j) = col.coeff(static_cast<int>(r));
            xj = xj * datum.galois_x[i] % m;
        }
        images.push_back(std::move(a));
    }
    return Rep(datum.decomposition.group, k, d, std::move(images));
}

Rep inertia_cotangent_power(const RamificationDatum& datum, int e)
{
    return restrict(cotangent_power(datum, e), datum.inertia.group);
}

Rep fiber_character(const RamificationDatum& datum, int n_p)
{
    return cotangent_power(datum, -n_p);
}

RamificationTable ramification_table(const GroupPtr& g)
{
    if (!g->is_pgl2()) throw input_error("ramification_table needs a PGL_2 group");
    const Field& k = g->field();
    std::set<Place> fixed;
    for (std::size_t s = 1; s < g->order(); ++s) {
        const Mobius& m = g->mobius(s);
        if (m.c == 0) fixed.insert(Place::infinity());
        Poly fp(k, {k.neg(m.b), k.sub(m.d, m.a), m.c});
        if (fp.degree() >= 1)
            for (const auto& fac : factor(fp)) fixed.insert(Place::finite(fac.poly));
    }
    RamificationTable t;
    t.group = g;
    std::set<Place> done;
    for (const Place& p : fixed) {
        if (done.count(p)) continue;
        auto orbit = place_orbit(g, p);
        done.insert(orbit.begin(), orbit.end());
        auto datum = ramification_datum(g, orbit.front());
        if (!datum.is_ramified()) throw internal_error("fixed point with trivial inertia: " + p.to_string());
        t.orbits.push_back(std::move(orbit));
        t.data.push_back(std::move(datum));
    }
    return t;
}

bool is_tame(const RamificationTable& t)
{
    return std::all_of(t.data.begin(), t.data.end(), [](const RamificationDatum& d) { return d.e_w == 1; });
}

bool is_weakly_ramified(const RamificationTable& t)
{
    return std::all_of(t.data.begin(), t.data.end(),
                       [](const RamificationDatum& d) { return d.filtration.size() <= 2 || d.filtration[2] == 1; });
}

std::int64_t different_degree(const RamificationTable& t)
{
    std::int64_t total = 0;
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        std::int64_t local = 0;
        for (std::size_t s : t.data[i].filtration) local += static_cast<std::int64_t>(s) - 1;
        total += static_cast<std::int64_t>(t.orbits[i].size()) * t.data[i].degree * local;
    }
    return total;
}

bool riemann_hurwitz_check(const RamificationTable& t)
{
    return different_degree(t) == 2 * static_cast<std::int64_t>(t.group->order()) - 2;
}

RRSpace rr_space(const Field& f, const Divisor& d)
{
    if (d.degree() < -1) throw input_error("Riemann-Roch oracle needs deg D >= -1, got " + d.to_string());
    RRSpace s;
    s.divisor = d;
    s.a = Poly::constant(f, 1);
    s.b = Poly::constant(f, 1);
    for (const auto& [p, n] : d.terms()) {
        if (p.is_infinity()) continue;
        if (p.poly().field() != f) throw input_error("place over another field in " + d.to_string());
        if (n > 0) s.a = s.a * power(p.poly(), n);
        else s.b = s.b * power(p.poly(), -n);
    }
    for (int j = 0; j <= d.degree(); ++j) s.basis.emplace_back(s.b.shifted(j), s.a);
    return s;
}

std::vector<RatFunc> rr_space_basis(const Field& f, const Divisor& d)
{
    return rr_space(f, d).basis;
}

Rep rr_action_rep(const GroupPtr& g, const Divisor& d)
{
    if (!g->is_pgl2()) throw input_error("rr_action_rep needs a PGL_2 group");
    if (auto orbit = non_equivariant_orbit(d, g)) {
        std::string names;
        for (const auto& p : *orbit) names += (names.empty() ? "" : ", ") + p.to_string();
        throw input_error("divisor is not constant on the orbit {" + names + "}");
    }
    const Field& k = g->field();
    RRSpace s = rr_space(k, d);
    const std::size_t n = s.dim();
    if (n == 0) return zero_rep(g, k);
    const RatFunc back(s.a, s.b);
    std::vector<Matrix> images;
    for (std::size_t x = 0; x < g->order(); ++x) {
        Mobius inv = inverse(k, g->mobius(x));
        Matrix a(k, n, n);
        for (std::size_t j = 0; j < n; ++j) {
            RatFunc img = substitute(s.basis[j], inv) * back;
            if (!img.is_polynomial() || img.num().degree() >= static_cast<int>(n))
                throw internal_error("rr_action_rep: image leaves L(D)");
            for (std::size_t i = 0; i < n; ++i) a(i, j) = img.num().coeff(static_cast<int>(i));
        }
        images.push_back(std::move(a));
    }
    return Rep(g, k, n, std::move(images));
}

} // namespace equirr
