#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

namespace equirr {

/* Field elements are stored as packed codes: the coefficient vector
 * (c_0, ..., c_{n-1}) of the representative polynomial over GF(p) is
 * encoded as c_0 + c_1 p + ... + c_{n-1} p^{n-1}.  Code 0 is zero, code 1
 * is one, and codes below p form the prime subfield. */
using elem_t = std::uint32_t;

struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus; // monic, low-to-high, length n+1
    elem_t primitive = 0;
    std::vector<elem_t> exp_table;        // exp_table[i] = primitive^i, i < q-1
    std::vector<std::uint32_t> log_table; // log_table[code], code != 0
    std::vector<std::uint32_t> zech;      // log(1 + g^i), q-1 when the sum is zero
};

/* Handle on GF(p^n).  Fields are interned: two handles with the same
 * (p, n) share one descriptor, hence one modulus. */
class Field {
public:
    Field() = default;

    /* Largest field order the table-driven arithmetic accepts. */
    static constexpr std::uint32_t max_order = 1u << 22;

    static Field make(std::uint32_t p, std::uint32_t n = 1);

    std::uint32_t characteristic() const { return d_->p; }
    std::uint32_t degree() const { return d_->n; }
    std::uint32_t order() const { return d_->q; }
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
    elem_t primitive_element() const { return d_->primitive; }
    bool valid() const { return d_ != nullptr; }
    bool is_prime() const { return d_->n == 1; }

    elem_t zero() const { return 0; }
    elem_t one() const { return 1; }

    elem_t add(elem_t a, elem_t b) const
    {
        if (d_->n == 1) {
            elem_t s = a + b;
            return s >= d_->p ? s - d_->p : s;
        }
        if (a == 0) return b;
        if (b == 0) return a;
        const std::uint32_t m = d_->q - 1;
        std::uint32_t la = d_->log_table[a], lb = d_->log_table[b];
        std::uint32_t diff = lb >= la ? lb - la : lb + m - la;
        std::uint32_t z = d_->zech[diff];
        if (z == m) return 0;
        std::uint32_t s = la + z;
        return d_->exp_table[s >= m ? s - m : s];
    }

    elem_t neg(elem_t a) const
    {
        if (a == 0) return 0;
        if (d_->n == 1) return d_->p - a;
        if (d_->p == 2) return a;
        // -1 = g^{(q-1)/2} for odd q
        const std::uint32_t m = d_->q - 1;
        std::uint32_t s = d_->log_table[a] + m / 2;
        return d_->exp_table[s >= m ? s - m : s];
    }

    elem_t sub(elem_t a, elem_t b) const { return add(a, neg(b)); }

    elem_t mul(elem_t a, elem_t b) const
    {
        if (d_->n == 1) return static_cast<elem_t>(std::uint64_t(a) * b % d_->p);
        if (a == 0 || b == 0) return 0;
        const std::uint32_t m = d_->q - 1;
        std::uint32_t s = d_->log_table[a] + d_->log_table[b];
        return d_->exp_table[s >= m ? s - m : s];
    }

    elem_t inv(elem_t a) const;
    elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }
    elem_t pow(elem_t a, std::int64_t e) const;

    /* a^(p^iterate). */
    elem_t frobenius(elem_t a, std::uint32_t iterate = 1) const;

    /* Discrete log to the primitive element; a must be nonzero. */
    std::uint32_t log(elem_t a) const;
    elem_t exp(std::uint64_t e) const { return d_->exp_table[e % (d_->q - 1)]; }

    /* Multiplicative order of a nonzero element. */
    std::uint64_t multiplicative_order(elem_t a) const;

    elem_t from_int(std::int64_t v) const;
    std::vector<std::uint32_t> coefficients(elem_t a) const;
    elem_t from_coefficients(std::span<const std::uint32_t> c) const;

    friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.d_ != b.d_; }

    const FieldData* data() const { return d_.get(); }

private:
    explicit Field(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const FieldData> d_;
};

std::ostream& operator<<(std::ostream& os, const Field& f);

bool is_prime_number(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/* Value type pairing a field with one of its elements. */
struct FFElem {
    Field field;
    elem_t code = 0;

    FFElem() = default;
    FFElem(Field f, elem_t c) : field(std::move(f)), code(c) {}

    std::vector<std::uint32_t> coeffs() const { return field.coefficients(code); }
    bool is_zero() const { return code == 0; }

    friend FFElem operator+(const FFElem& a, const FFElem& b) { return {a.field, a.field.add(a.code, b.code)}; }
    friend FFElem operator-(const FFElem& a, const FFElem& b) { return {a.field, a.field.sub(a.code, b.code)}; }
    friend FFElem operator*(const FFElem& a, const FFElem& b) { return {a.field, a.field.mul(a.code, b.code)}; }
    friend FFElem operator/(const FFElem& a, const FFElem& b) { return {a.field, a.field.div(a.code, b.code)}; }
    FFElem operator-() const { return {field, field.neg(code)}; }
    friend bool operator==(const FFElem& a, const FFElem& b) { return a.field == b.field && a.code == b.code; }
};

FFElem frobenius(const FFElem& e, std::uint32_t iterate);

/* Ring embedding GF(p^m) -> GF(p^{mk}).  The source generator is sent to
 * the root of the source modulus with the smallest code in the target. */
class Embedding {
public:
    Embedding(Field source, Field target);

    const Field& source() const { return src_; }
    const Field& target() const { return tgt_; }
    elem_t operator()(elem_t a) const { return image_[a]; }

    /* Preimage of a target element lying in the image, if any. */
    bool contains(elem_t b) const;
    elem_t preimage(elem_t b) const;

private:
    Field src_, tgt_;
    std::vector<elem_t> image_;
    std::vector<std::int64_t> back_; // -1 when not in the image
};

/* Cached embedding for the pair (source, target). */
const Embedding& embedding(const Field& source, const Field& target);

FFElem embed(const FFElem& e, const Field& target);

} // namespace equirr
