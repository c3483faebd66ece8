#include "equirr/field.hpp"

#include "equirr/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace equirr {

bool is_prime_number(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

/* Dense polynomials over GF(p) with plain residues; only used to pick the
 * modulus and to bootstrap the log tables. */
using RawPoly = std::vector<std::uint32_t>;

void trim(RawPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t qt = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - qt * nt);
        std::tie(r, nr) = std::make_pair(nr, r - qt * nr);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

RawPoly raw_mod(RawPoly a, const RawPoly& m, std::uint32_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t(a.back()) * lead_inv % p);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            std::uint64_t sub = std::uint64_t(c) * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

RawPoly raw_mul(const RawPoly& a, const RawPoly& b, std::uint32_t p)
{
    if (a.empty() || b.empty()) return {};
    RawPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, std::uint32_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        RawPoly r = raw_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

RawPoly raw_powmod(RawPoly base, std::uint64_t e, const RawPoly& m, std::uint32_t p)
{
    RawPoly result{1};
    base = raw_mod(base, m, p);
    while (e) {
        if (e & 1) result = raw_mod(raw_mul(result, base, p), m, p);
        base = raw_mod(raw_mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

/* x^(p^k) mod m by repeated p-th powering. */
RawPoly raw_frobenius_x(std::uint32_t k, const RawPoly& m, std::uint32_t p)
{
    RawPoly h{0, 1};
    h = raw_mod(h, m, p);
    for (std::uint32_t i = 0; i < k; ++i) h = raw_powmod(h, p, m, p);
    return h;
}

bool raw_is_irreducible(const RawPoly& f, std::uint32_t p)
{
    const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    if (n == 1) return true;
    RawPoly x{0, 1};
    auto diff_x = [&](RawPoly h) {
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        return h;
    };
    if (!diff_x(raw_frobenius_x(n, f, p)).empty()) return false;
    for (std::uint64_t r : prime_divisors(n)) {
        RawPoly g = raw_gcd(f, diff_x(raw_frobenius_x(n / static_cast<std::uint32_t>(r), f, p)), p);
        if (g.size() != 1) return false;
    }
    return true;
}

RawPoly least_irreducible(std::uint32_t p, std::uint32_t n)
{
    if (n == 1) return {0, 1};
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        RawPoly f(n + 1, 0);
        f[n] = 1;
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        if (f[0] == 0) continue;
        if (raw_is_irreducible(f, p)) return f;
    }
    throw internal_error("no irreducible polynomial found");
}

RawPoly decode(elem_t a, std::uint32_t p, std::uint32_t n)
{
    RawPoly r(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        r[i] = a % p;
        a /= p;
    }
    trim(r);
    return r;
}

elem_t encode(const RawPoly& r, std::uint32_t p)
{
    elem_t code = 0;
    for (std::size_t i = r.size(); i-- > 0;) code = code * p + r[i];
    return code;
}

std::shared_ptr<FieldData> build_field(std::uint32_t p, std::uint32_t n)
{
    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->n = n;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        q *= p;
        if (q > Field::max_order) throw input_error("field order exceeds supported maximum");
    }
    d->q = static_cast<std::uint32_t>(q);
    d->modulus = least_irreducible(p, n);

    const std::uint32_t m = d->q - 1;
    auto slow_mul = [&](elem_t a, elem_t b) {
        if (n == 1) return static_cast<elem_t>(std::uint64_t(a) * b % p);
        return encode(raw_mod(raw_mul(decode(a, p, n), decode(b, p, n), p), d->modulus, p), p);
    };
    auto slow_pow = [&](elem_t a, std::uint64_t e) {
        elem_t r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    };

    if (d->q == 2) {
        d->primitive = 1;
    } else {
        auto primes = prime_divisors(m);
        for (elem_t g = 2; g < d->q; ++g) {
            bool ok = true;
            for (auto r : primes)
                if (slow_pow(g, m / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                d->primitive = g;
                break;
            }
        }
    }

    d->exp_table.resize(m);
    d->log_table.assign(d->q, 0);
    elem_t cur = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        d->exp_table[i] = cur;
        d->log_table[cur] = i;
        cur = slow_mul(cur, d->primitive);
    }

    if (n > 1) {
        // 1 + g^i computed on coefficient vectors: only c_0 changes.
        d->zech.resize(m);
        for (std::uint32_t i = 0; i < m; ++i) {
            elem_t v = d->exp_table[i];
            elem_t c0 = v % p;
            elem_t w = v - c0 + (c0 + 1) % p;
            d->zech[i] = w == 0 ? m : d->log_table[w];
        }
    }
    return d;
}

} // namespace

Field Field::make(std::uint32_t p, std::uint32_t n)
{
    if (!is_prime_number(p)) throw input_error("field characteristic " + std::to_string(p) + " is not prime");
    if (n == 0) throw input_error("field degree must be positive");
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FieldData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, n});
    if (it != cache.end()) return Field(it->second);
    auto d = build_field(p, n);
    cache.emplace(std::make_pair(p, n), d);
    return Field(d);
}

elem_t Field::inv(elem_t a) const
{
    if (a == 0) throw input_error("division by zero in finite field");
    if (d_->n == 1) return inv_mod(a, d_->p);
    const std::uint32_t m = d_->q - 1;
    std::uint32_t l = d_->log_table[a];
    return d_->exp_table[l == 0 ? 0 : m - l];
}

elem_t Field::pow(elem_t a, std::int64_t e) const
{
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t m = d_->q - 1;
    std::uint64_t l = d_->log_table[a];
    return d_->exp_table[(l * (static_cast<std::uint64_t>(e) % m)) % m];
}

elem_t Field::frobenius(elem_t a, std::uint32_t iterate) const
{
    iterate %= d_->n;
    for (std::uint32_t i = 0; i < iterate; ++i) a = pow(a, d_->p);
    return a;
}

std::uint32_t Field::log(elem_t a) const
{
    if (a == 0) throw input_error("log of zero");
    return d_->log_table[a];
}

std::uint64_t Field::multiplicative_order(elem_t a) const
{
    if (a == 0) throw input_error("order of zero");
    std::uint64_t m = d_->q - 1;
    std::uint64_t l = d_->log_table[a];
    return m / std::gcd(m, l);
}

elem_t Field::from_int(std::int64_t v) const
{
    std::int64_t p = d_->p;
    v %= p;
    if (v < 0) v += p;
    return static_cast<elem_t>(v);
}

std::vector<std::uint32_t> Field::coefficients(elem_t a) const
{
    std::vector<std::uint32_t> c(d_->n, 0);
    for (std::uint32_t i = 0; i < d_->n; ++i) {
        c[i] = a % d_->p;
        a /= d_->p;
    }
    return c;
}

elem_t Field::from_coefficients(std::span<const std::uint32_t> c) const
{
    if (c.size() > d_->n) throw input_error("too many coefficients for field element");
    elem_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= d_->p) throw input_error("coefficient out of range");
        code = code * d_->p + c[i];
    }
    return code;
}

std::ostream& operator<<(std::ostream& os, const Field& f)
{
    os << "GF(" << f.characteristic();
    if (f.degree() > 1) os << "^" << f.degree();
    return os << ")";
}

FFElem frobenius(const FFElem& e, std::uint32_t iterate)
{
    return {e.field, e.field.frobenius(e.code, iterate)};
}

Embedding::Embedding(Field source, Field target) : src_(std::move(source)), tgt_(std::move(target))
{
    if (src_.characteristic() != tgt_.characteristic() || tgt_.degree() % src_.degree() != 0)
        throw input_error("no embedding between fields of incompatible degrees");
    const std::uint32_t p = src_.characteristic();
    elem_t theta = 0;
    if (src_.degree() == 1) {
        theta = 0; // unused
    } else {
        const auto& mod = src_.modulus();
        bool found = false;
        for (elem_t cand = 0; cand < tgt_.order() && !found; ++cand) {
            elem_t acc = 0;
            for (std::size_t i = mod.size(); i-- > 0;) acc = tgt_.add(tgt_.mul(acc, cand), mod[i]);
            if (acc == 0) {
                theta = cand;
                found = true;
            }
        }
        if (!found) throw internal_error("source modulus has no root in target field");
    }
    image_.resize(src_.order());
    back_.assign(tgt_.order(), -1);
    for (elem_t a = 0; a < src_.order(); ++a) {
        elem_t img;
        if (src_.degree() == 1) {
            img = a;
        } else {
            auto c = src_.coefficients(a);
            img = 0;
            for (std::size_t i = c.size(); i-- > 0;) img = tgt_.add(tgt_.mul(img, theta), c[i] % p);
        }
        image_[a] = img;
        back_[img] = a;
    }
}

bool Embedding::contains(elem_t b) const { return back_[b] >= 0; }

elem_t Embedding::preimage(elem_t b) const
{
    if (back_[b] < 0) throw input_error("element is not in the embedded subfield");
    return static_cast<elem_t>(back_[b]);
}

const Embedding& embedding(const Field& source, const Field& target)
{
    static std::mutex mu;
    static std::map<std::pair<const FieldData*, const FieldData*>, std::unique_ptr<Embedding>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(source.data(), target.data());
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto e = std::make_unique<Embedding>(source, target);
    auto& ref = *e;
    cache.emplace(key, std::move(e));
    return ref;
}

FFElem embed(const FFElem& e, const Field& target)
{
    return {target, embedding(e.field, target)(e.code)};
}

} // namespace equirr
