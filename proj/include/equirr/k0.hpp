#pragma once

#include "equirr/rep.hpp"

#include <cstdint>
#include <vector>

namespace equirr {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/* U A V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... */
struct SmithForm {
    IntMatrix u, d, v;
    std::vector<std::int64_t> diagonal() const;
};
SmithForm smith_normal_form(const IntMatrix& a);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);

/* Unique rational solution of A x = b for square nonsingular A. */
std::optional<std::vector<Rational>> rational_solve(const IntMatrix& a, const std::vector<Rational>& b);

/* Projective indecomposables of k[G] and the Cartan matrix.  Column j of
 * `matrix` holds the composition factors of pims[j], the projective cover
 * of simple j. */
struct CartanData {
    const SimpleRegistry* registry = nullptr;
    std::vector<Rep> pims;
    std::vector<ClassVector> pim_classes;
    IntMatrix matrix;
    std::vector<std::size_t> regular_multiplicity; // copies of pims[j] in k[G]

    std::size_t size() const { return matrix.size(); }
};

/* Splits k[G] into indecomposables and groups them by head.  The registry
 * is saturated by chopping k[G] first. */
CartanData cartan_data(SimpleRegistry& reg, Rng& rng);

/* Entries dim Hom(P_i, P_j) / dim End(S_i): the same matrix computed from
 * intertwiners instead of composition factors. */
IntMatrix cartan_matrix_via_hom(const CartanData& cd);

/* Integer combination of Cartan columns, decided by Smith normal form. */
bool in_cartan_image(const ClassVector& v, const CartanData& cd);
/* Nonnegative integer combination of Cartan columns. */
bool is_projective_class(const ClassVector& v, const CartanData& cd);
/* Coefficients of v in the PIM basis, if v lies in the rational span. */
std::optional<std::vector<Rational>> pim_coordinates(const ClassVector& v, const CartanData& cd);

/* Same matrices with entries pushed into an extension field. */
Rep extend_scalars(const Rep& m, const Field& target);

/* The map on classes induced by extend_scalars; chops the extension of each
 * simple that occurs in v into the target registry. */
ClassVector extend_class(const ClassVector& v, SimpleRegistry& target, Rng& rng);

struct CartesianVerdict {
    bool over_base = false;
    bool over_extension = false;
    bool agree() const { return over_base == over_extension; }
};
CartesianVerdict cartesian_check(const ClassVector& v, const CartanData& base, const CartanData& extended,
                                 SimpleRegistry& target, Rng& rng);

} // namespace equirr
