#pragma once

#include "equirr/field.hpp"
#include "equirr/matrix.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace equirr {

/* Class of an invertible 2x2 matrix in PGL_2(F), normalized so that the
 * first nonzero entry in row-major order is 1.  Acts on P^1 by
 * x -> (a x + b) / (c x + d). */
struct Mobius {
    elem_t a = 1, b = 0, c = 0, d = 1;

    static Mobius normalized(const Field& f, elem_t a, elem_t b, elem_t c, elem_t d);
    static Mobius from_matrix(const Matrix& m);
    Matrix to_matrix(const Field& f) const;
    friend bool operator==(const Mobius&, const Mobius&) = default;
    friend auto operator<=>(const Mobius&, const Mobius&) = default;
};

Mobius compose(const Field& f, const Mobius& s, const Mobius& t); // s after t
Mobius inverse(const Field& f, const Mobius& s);

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/* Finite group with elements 0..n-1, identity 0, and an explicit
 * multiplication table.  Groups created from PGL_2 generators remember the
 * Mobius map of every element; subgroups remember their parent. */
class FiniteGroup {
public:
    static constexpr std::size_t default_cap = 2000;

    static GroupPtr from_table(const std::vector<std::vector<std::size_t>>& table);
    static GroupPtr close_generators(const Field& f, const std::vector<Mobius>& gens, std::size_t cap = default_cap);
    static GroupPtr close_generators(const Field& f, const std::vector<Matrix>& gens, std::size_t cap = default_cap);

    std::size_t order() const { return n_; }
    std::size_t identity() const { return 0; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
    std::size_t inv(std::size_t a) const { return inv_[a]; }
    std::size_t element_order(std::size_t a) const { return order_[a]; }
    std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); } // g x g^-1
    std::size_t power(std::size_t a, std::int64_t e) const;
    const std::vector<std::size_t>& generators() const { return gens_; }

    bool is_pgl2() const { return !mobius_.empty(); }
    const Field& field() const { return field_; }
    const Mobius& mobius(std::size_t i) const { return mobius_.at(i); }
    std::optional<std::size_t> index_of(const Mobius& m) const;

    /* Set for subgroups created by make_subgroup. */
    const GroupPtr& parent() const { return parent_; }
    std::size_t to_parent(std::size_t i) const { return to_parent_.at(i); }

    bool is_abelian() const;

private:
    FiniteGroup() = default;
    void finish(); // inverses, orders, generators
    friend GroupPtr build_group(std::size_t, std::vector<std::uint32_t>, std::vector<Mobius>, Field, GroupPtr,
                                std::vector<std::size_t>);

    std::size_t n_ = 0;
    std::vector<std::uint32_t> table_;
    std::vector<std::size_t> inv_, order_, gens_;
    std::vector<Mobius> mobius_;
    Field field_;
    GroupPtr parent_;
    std::vector<std::size_t> to_parent_;
};

/* Subgroup of a parent group.  `group` is the subgroup as a group in its
 * own right, with element i corresponding to parent element elements[i]. */
struct Subgroup {
    GroupPtr parent;
    std::vector<std::size_t> elements; // sorted, starts with the identity
    GroupPtr group;

    std::size_t order() const { return elements.size(); }
    bool contains(std::size_t g) const;
};

/* Validates closure and builds the subgroup group. */
Subgroup make_subgroup(const GroupPtr& parent, std::vector<std::size_t> elements);
Subgroup generated_subgroup(const GroupPtr& parent, const std::vector<std::size_t>& gens);
Subgroup whole_group(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
/* Same elements viewed inside the parent's subgroup `h` (sub must lie in h). */
Subgroup relative_subgroup(const Subgroup& sub, const Subgroup& h);

/* Map from elements of h into g, following the chain of parents. */
std::vector<std::size_t> embedding_map(const FiniteGroup& h, const FiniteGroup& g);
bool is_descendant(const FiniteGroup& h, const FiniteGroup& g);

bool is_normal(const Subgroup& n);

/* Conjugacy classes, each sorted; classes ordered by least element. */
std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g);
std::vector<std::size_t> p_regular_elements(const FiniteGroup& g, std::uint64_t p);
Subgroup sylow_subgroup(const GroupPtr& g, std::uint64_t p);
/* Complement C to the normal p-subgroup p_sub of i; requires coprime order and index. */
Subgroup schur_zassenhaus_complement(const GroupPtr& i, const Subgroup& p_sub);
/* Left coset representatives of h in its parent, least index first. */
std::vector<std::size_t> cosets(const Subgroup& h);

struct QuotientGroup {
    GroupPtr group;
    std::vector<std::size_t> projection; // parent element -> quotient element
    Subgroup kernel;
};
QuotientGroup quotient(const Subgroup& normal);

std::uint64_t p_part(std::uint64_t n, std::uint64_t p);

} // namespace equirr
