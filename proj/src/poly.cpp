#include "equirr/poly.hpp"

#include "equirr/error.hpp"

#include <algorithm>
#include <sstream>

namespace equirr {

Poly::Poly(Field f, std::vector<elem_t> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Field& f, elem_t c, int degree)
{
    std::vector<elem_t> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return Poly(f, std::move(v));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

elem_t Poly::eval(elem_t a) const
{
    elem_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, a), c_[i]);
    return acc;
}

Poly Poly::monic() const
{
    if (c_.empty()) return *this;
    return scaled(f_.inv(c_.back()));
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1) return Poly(f_);
    std::vector<elem_t> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = f_.mul(c_[i], f_.from_int(static_cast<std::int64_t>(i)));
    return Poly(f_, std::move(d));
}

Poly Poly::scaled(elem_t s) const
{
    std::vector<elem_t> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = f_.mul(c_[i], s);
    return Poly(f_, std::move(d));
}

Poly Poly::shifted(int k) const
{
    if (c_.empty()) return *this;
    std::vector<elem_t> d(static_cast<std::size_t>(k), 0);
    d.insert(d.end(), c_.begin(), c_.end());
    return Poly(f_, std::move(d));
}

Poly operator+(const Poly& a, const Poly& b)
{
    const Field& f = a.f_.valid() ? a.f_ : b.f_;
    std::vector<elem_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(f, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b)
{
    const Field& f = a.f_.valid() ? a.f_ : b.f_;
    std::vector<elem_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(f, std::move(r));
}

Poly Poly::operator-() const
{
    std::vector<elem_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_.neg(c_[i]);
    return Poly(f_, std::move(r));
}

Poly operator*(const Poly& a, const Poly& b)
{
    const Field& f = a.f_.valid() ? a.f_ : b.f_;
    if (a.c_.empty() || b.c_.empty()) return Poly(f);
    std::vector<elem_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw input_error("polynomial division by zero");
    const Field& f = b.field();
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<elem_t> r = a.coeffs();
    const int db = b.degree();
    std::vector<elem_t> q(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    const elem_t lead_inv = f.inv(b.leading());
    for (int i = a.degree(); i >= db; --i) {
        elem_t c = f.mul(r[i], lead_inv);
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, b.coeffs()[j]));
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

bool operator<(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string Poly::to_string() const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        elem_t c = c_[i];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        bool show_coeff = c != 1 || i == 0;
        if (show_coeff) {
            if (f_.degree() == 1) {
                os << c;
            } else {
                os << "[";
                auto cs = f_.coefficients(c);
                for (std::size_t k = 0; k < cs.size(); ++k) os << (k ? "," : "") << cs[k];
                os << "]";
            }
        }
        if (i > 0) {
            if (show_coeff) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b)
{
    const Field& f = a.field().valid() ? a.field() : b.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(f, 1), s1(f);
    Poly t0(f), t1 = Poly::constant(f, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    elem_t li = f.inv(r0.leading());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m)
{
    Poly result = Poly::constant(m.field(), 1) % m;
    base = base % m;
    while (e) {
        if (e & 1) result = (result * base) % m;
        e >>= 1;
        if (e) base = (base * base) % m;
    }
    return result;
}

Poly invmod(const Poly& a, const Poly& m)
{
    auto eg = ext_gcd(a % m, m);
    if (eg.g.degree() != 0) throw input_error("polynomial not invertible modulo " + m.to_string());
    return eg.s % m;
}

Poly compose(const Poly& f, const Poly& g)
{
    Poly acc(g.field());
    for (int i = f.degree(); i >= 0; --i) acc = acc * g + Poly::constant(g.field(), f.coeffs()[i]);
    return acc;
}

namespace {

/* x^(q^k) mod m. */
Poly frobenius_power_x(const Poly& m, int k)
{
    const Field& f = m.field();
    Poly h = Poly::x(f) % m;
    for (int i = 0; i < k; ++i) h = powmod(h, f.order(), m);
    return h;
}

/* p-th root of a polynomial whose derivative vanishes. */
Poly pth_root(const Poly& a)
{
    const Field& f = a.field();
    const std::uint32_t p = f.characteristic();
    std::vector<elem_t> r(static_cast<std::size_t>(a.degree()) / p + 1, 0);
    for (int i = 0; i <= a.degree(); i += static_cast<int>(p)) {
        // c^(1/p) = c^(p^(n-1))
        r[static_cast<std::size_t>(i) / p] = f.frobenius(a.coeffs()[i], f.degree() - 1);
    }
    return Poly(f, std::move(r));
}

void squarefree(const Poly& f, int mult, std::vector<Factor>& out)
{
    if (f.degree() <= 0) return;
    Poly d = f.derivative();
    if (d.is_zero()) {
        squarefree(pth_root(f), mult * static_cast<int>(f.field().characteristic()), out);
        return;
    }
    Poly c = gcd(f, d);
    Poly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.push_back({z.monic(), i * mult});
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) squarefree(pth_root(c), mult * static_cast<int>(f.field().characteristic()), out);
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly f)
{
    std::vector<std::pair<Poly, int>> out;
    const Field& fld = f.field();
    Poly h = Poly::x(fld) % f;
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, fld.order(), f);
        Poly g = gcd(h - Poly::x(fld), f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
    return out;
}

Poly random_poly(const Field& fld, int below_degree, Rng& rng)
{
    std::uniform_int_distribution<elem_t> dist(0, fld.order() - 1);
    std::vector<elem_t> c(static_cast<std::size_t>(below_degree));
    for (auto& v : c) v = dist(rng);
    return Poly(fld, std::move(c));
}

void equal_degree(const Poly& g, int d, Rng& rng, std::vector<Poly>& out)
{
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const Field& fld = g.field();
    const std::uint64_t q = fld.order();
    for (;;) {
        Poly a = random_poly(fld, g.degree(), rng);
        if (a.degree() <= 0) continue;
        Poly b;
        if (q % 2 == 1) {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            Poly t = a % g, s = t;
            for (int i = 1; i < d; ++i) {
                t = powmod(t, q, g);
                s = (s * t) % g;
            }
            b = powmod(s, (q - 1) / 2, g) - Poly::constant(fld, 1);
        } else {
            // absolute trace to GF(2): sum of a^(2^i), i < n d
            const std::uint32_t k = fld.degree() * static_cast<std::uint32_t>(d);
            Poly t = a % g, s = t;
            for (std::uint32_t i = 1; i < k; ++i) {
                t = (t * t) % g;
                s = s + t;
            }
            b = s;
        }
        Poly h = gcd(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree(h, d, rng, out);
            equal_degree(g / h, d, rng, out);
            return;
        }
    }
}

} // namespace

bool is_irreducible(const Poly& f)
{
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    const int n = f.degree();
    Poly m = f.monic();
    Poly x = Poly::x(f.field());
    if (!(frobenius_power_x(m, n) - x).is_zero()) return false;
    for (auto r : prime_divisors(static_cast<std::uint64_t>(n))) {
        Poly g = gcd(m, frobenius_power_x(m, n / static_cast<int>(r)) - x);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::vector<Factor> factor(const Poly& f, Rng& rng)
{
    if (f.is_zero()) throw input_error("cannot factor the zero polynomial");
    std::vector<Factor> sqf;
    squarefree(f.monic(), 1, sqf);
    std::vector<Factor> out;
    for (const auto& [g, mult] : sqf) {
        for (const auto& [h, d] : distinct_degree(g)) {
            std::vector<Poly> parts;
            equal_degree(h, d, rng, parts);
            for (auto& part : parts) out.push_back({std::move(part), mult});
        }
    }
    // merge repeated irreducibles coming from different squarefree layers
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
    std::vector<Factor> merged;
    for (auto& fa : out) {
        if (!merged.empty() && merged.back().poly == fa.poly)
            merged.back().multiplicity += fa.multiplicity;
        else
            merged.push_back(std::move(fa));
    }
    return merged;
}

std::vector<Factor> factor(const Poly& f)
{
    Rng rng(0x5eed);
    return factor(f, rng);
}

std::vector<elem_t> roots(const Poly& f, Rng& rng)
{
    if (f.is_zero()) throw input_error("roots of the zero polynomial");
    std::vector<elem_t> out;
    if (f.degree() <= 0) return out;
    // restrict to the product of linear factors first
    Poly m = f.monic();
    Poly g = gcd(m, powmod(Poly::x(f.field()), f.field().order(), m) - Poly::x(f.field()));
    if (g.degree() <= 0) return out;
    std::vector<Poly> parts;
    equal_degree(g, 1, rng, parts);
    for (const auto& pt : parts) out.push_back(f.field().neg(pt.coeffs()[0]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Poly> monic_irreducibles(const Field& f, int degree)
{
    std::vector<Poly> out;
    std::uint64_t total = 1;
    for (int i = 0; i < degree; ++i) total *= f.order();
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<elem_t> c(static_cast<std::size_t>(degree) + 1, 0);
        c.back() = 1;
        std::uint64_t v = code;
        for (int i = 0; i < degree; ++i) {
            c[i] = static_cast<elem_t>(v % f.order());
            v /= f.order();
        }
        Poly cand(f, std::move(c));
        if (is_irreducible(cand)) out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Poly least_irreducible(const Field& f, int degree)
{
    if (degree == 1) return Poly::x(f);
    std::uint64_t total = 1;
    for (int i = 0; i < degree; ++i) total *= f.order();
    // enumerate with the highest non-leading coefficient most significant
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<elem_t> c(static_cast<std::size_t>(degree) + 1, 0);
        c.back() = 1;
        std::uint64_t v = code;
        for (int i = 0; i < degree; ++i) {
            c[i] = static_cast<elem_t>(v % f.order());
            v /= f.order();
        }
        Poly cand(f, std::move(c));
        if (is_irreducible(cand)) return cand;
    }
    throw internal_error("no irreducible polynomial of requested degree");
}

int multiplicity(Poly a, const Poly& p)
{
    if (a.is_zero()) throw input_error("multiplicity in the zero polynomial");
    int k = 0;
    for (;;) {
        auto [q, r] = divmod(a, p);
        if (!r.is_zero()) return k;
        a = std::move(q);
        ++k;
    }
}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) throw input_error("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize()
{
    const Field& f = den_.field();
    if (num_.is_zero()) {
        num_ = Poly(f);
        den_ = Poly::constant(f, 1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    elem_t li = f.inv(den_.leading());
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }
RatFunc operator/(const RatFunc& a, const RatFunc& b)
{
    if (b.is_zero()) throw input_error("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int e) const
{
    RatFunc base = e >= 0 ? *this : RatFunc(den_, num_);
    RatFunc r(Poly::constant(field(), 1));
    for (int i = 0; i < std::abs(e); ++i) r = r * base;
    return r;
}

std::string RatFunc::to_string() const
{
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

} // namespace equirr
