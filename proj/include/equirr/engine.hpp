#pragma once

#include "equirr/curve.hpp"
#include "equirr/k0.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equirr {

/* n = (e_w - 1) + (l + m e_t) e_w with 0 <= l < e_t. */
struct LMDecomp {
    int l = 0;
    int m = 0;
};
/* Throws input_error unless n = -1 mod e_w. */
LMDecomp lm_decompose(int n, std::size_t e_t, std::size_t e_w);

/* One G-orbit of closed points with the datum at its representative. */
struct OrbitTerm {
    std::vector<Place> places; // sorted, representative first; empty for abstract data
    std::size_t size = 1;      // number of points in the orbit
    RamificationDatum datum;
    int n = 0; // coefficient of the divisor along the orbit
};

/* Ramification data and an equivariant divisor in orbit form.  Ramified
 * orbits come first; unramified orbits are listed only where n != 0. */
struct CoverModel {
    GroupPtr group;
    Field field;
    int genus_y = 0;
    std::vector<OrbitTerm> orbits;

    int divisor_degree() const;
    bool is_tame() const;
    bool is_weakly_ramified() const;
    /* n_P = -1 mod e_w on every orbit. */
    bool congruence_condition() const;
    /* From Riemann-Hurwitz; throws input_error when not an integer >= 0. */
    int genus_x() const;
    /* Equivariant divisor on P^1 (concrete models only). */
    Divisor divisor() const;
};

/* Concrete model: X = P^1 with the given PGL_2 group.  Rejects
 * non-equivariant divisors, naming the orbit. */
CoverModel curve_model(const RamificationTable& t, const Divisor& d);
/* Same divisor with each orbit represented by its largest place. */
CoverModel with_alternate_representatives(const CoverModel& m);

/* Scenario state: one seeded generator, the simple-module registry of G and
 * registries for the decomposition groups met along the way. */
class Engine {
public:
    Engine(GroupPtr g, Field f, std::uint64_t seed);
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const GroupPtr& group() const { return g_; }
    const Field& field() const { return f_; }
    Rng& rng() { return rng_; }
    SimpleRegistry& registry() { return *reg_; }
    const CartanData& cartan();
    ClassVector regular_class();
    ClassVector class_of(const Rep& m); // m is a G-module

    SimpleRegistry& local_registry(const GroupPtr& h);
    const CartanData& local_cartan(const GroupPtr& h);
    /* chop(Ind_H^G P_j) for the j-th PIM of k[H]. */
    const ClassVector& induced_pim_class(const GroupPtr& h, std::size_t j);

private:
    struct Local {
        GroupPtr group;
        std::unique_ptr<SimpleRegistry> registry;
        std::optional<CartanData> cartan;
        std::map<std::size_t, ClassVector> induced;
    };
    Local& local(const GroupPtr& h);

    GroupPtr g_;
    Field f_;
    Rng rng_;
    std::unique_ptr<SimpleRegistry> reg_;
    std::optional<CartanData> cartan_;
    std::optional<ClassVector> regular_;
    std::map<const FiniteGroup*, Local> locals_;
};

/* Ind_{I_P}^G Cov((m_P/m_P^2)^{e}) for the datum's inertia group. */
Rep induced_cover(const RamificationDatum& datum, int e, const GroupPtr& target);

/* N via the average over ramified points of induced covers of cotangent
 * powers.  Throws internal_error when the average is not integral. */
ClassVector n_module_via_sum(Engine& eng, const CoverModel& m);
/* N via (1 - g_Y)[k[G]] - [H^0(L(E))] with E = sum (e_w - 1) P on P^1. */
ClassVector n_module_via_chi(Engine& eng, const CoverModel& m);

/* The projective k[G_P]-module whose f-fold sum is Ind_{I_P}^{G_P} Cov(cot^{-d}). */
struct WpdResult {
    int d = 0;
    std::size_t f = 1;
    std::vector<std::size_t> head_multiplicities; // of the induced cover, per simple of k[G_P]
    std::vector<std::size_t> pim_multiplicities;  // head multiplicities / f
    ClassVector local_class;                      // over k[G_P]
    bool projective = false;
    bool projective_class = false;
    ClassVector induced_integral; // [Ind_{G_P}^G W] as a sum of induced PIMs
    ClassVector induced_rational; // [Ind_{I_P}^G Cov(cot^{-d})] / f
};
/* Throws internal_error with the head multiplicities when f does not divide them. */
WpdResult wpd_class(Engine& eng, const RamificationDatum& datum, int d);

struct OrbitContribution {
    std::size_t orbit = 0;
    int n = 0;
    LMDecomp lm;
    int quotient_degree = 1;
    std::vector<WpdResult> w; // d = 1..l
};

struct ChiFormula {
    ClassVector n_class;
    std::vector<OrbitContribution> orbits;
    Rational regular_coefficient; // 1 - g_Y + sum [k(R):k] m_R
    ClassVector integral;         // W terms through PIM multiplicities
    ClassVector rational;         // W terms as (1/f) induced covers
};
/* Needs a weakly ramified model satisfying the congruence condition
 * (input_error otherwise).  n_class is N from either route. */
ChiFormula chi_formula(Engine& eng, const CoverModel& m, const ClassVector& n_class);

/* n chi = C [k[G]] - sum_P e_w sum_d d [Ind_{I_P}^G(E(P) (x) cot^d)] for E = L(D). */
struct ChiTimesN {
    Rational c;
    ClassVector rhs;
};
/* Throws internal_error when C is not an integer. */
ChiTimesN chi_times_n(Engine& eng, const CoverModel& m);

/* Tame covers: -r[N] + sum_R sum_i sum_{d=1}^{l_{R,i}} [Ind W_{R,d}], to be
 * compared modulo multiples of [k[G]].  exponents[orbit] lists l_{R,i}. */
ClassVector chi_tame_rank_r(Engine& eng, const CoverModel& m, const std::vector<std::vector<int>>& exponents,
                            const ClassVector& n_class);
/* Exponents for E = L(D): l = n_P mod e_t. */
std::vector<std::vector<int>> line_bundle_exponents(const CoverModel& m);
/* t with a - b = t [k[G]], if any. */
std::optional<std::int64_t> regular_multiple(const ClassVector& a, const ClassVector& b, const ClassVector& regular);

/* Class identities at a tame point. */
struct StructureChecks {
    bool w_is_cotangent_power = false; // [W_{P,d}] = [cot^{-d}] over k[G_P]
    bool induce_restrict = false;      // [Ind_{I_P}^{G_P} Res V] = f [V]
};
StructureChecks structure_checks(Engine& eng, const RamificationDatum& datum, int d);

struct ProjectivityVerdicts {
    bool h0_projective = false;
    bool chi_in_cartan_image = false;
    bool chi_projective_class = false;
    bool weakly_ramified = false;
    bool tame = false;
    bool congruence = false;
    bool degree_large = false; // deg D > 2 g_X - 2
    /* Tame covers put chi in the Cartan image. */
    bool tame_implication() const { return !tame || chi_in_cartan_image; }
    /* Weak ramification and the congruence make chi (here H^0) projective. */
    bool sufficient_implication() const
    {
        return !(weakly_ramified && congruence) || (h0_projective && chi_projective_class);
    }
    /* A projective H^0 of large degree forces weak ramification and the congruence. */
    bool necessary_implication() const { return !(degree_large && h0_projective) || (weakly_ramified && congruence); }
};
ProjectivityVerdicts projectivity_predicates(Engine& eng, const CoverModel& m, const Rep& h0);

} // namespace equirr
