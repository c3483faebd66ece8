#pragma once

#include "equirr/group.hpp"
#include "equirr/matrix.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace equirr {

using Rational = boost::rational<std::int64_t>;

/* Matrix representation of a finite group: one invertible matrix per
 * group element, acting on column vectors. */
class Rep {
public:
    Rep() = default;
    /* Images for every element; checked on generator pairs only. */
    Rep(GroupPtr g, Field f, std::size_t dim, std::vector<Matrix> images);
    /* Images of g->generators(), in order; the extension to the whole group
     * is checked for consistency, so this is a full homomorphism test. */
    static Rep from_generators(GroupPtr g, Field f, std::size_t dim, const std::vector<Matrix>& gen_images);

    const GroupPtr& group() const { return g_; }
    const Field& field() const { return f_; }
    std::size_t dim() const { return dim_; }
    const Matrix& image(std::size_t g) const { return images_[g]; }
    const std::vector<Matrix>& images() const { return images_; }
    std::vector<Matrix> generator_images() const;

private:
    GroupPtr g_;
    Field f_;
    std::size_t dim_ = 0;
    std::vector<Matrix> images_;
};

Rep trivial_rep(const GroupPtr& g, const Field& f, std::size_t dim = 1);
Rep zero_rep(const GroupPtr& g, const Field& f);
/* Left-regular permutation representation on the basis e_h, g e_h = e_{gh}. */
Rep regular_rep(const GroupPtr& g, const Field& f);
/* M is a representation of a subgroup H of g (H descends from g through
 * parent links).  Blocks follow the left cosets of H in their standard order. */
Rep induce(const Rep& m, const GroupPtr& g);
/* h must descend from m.group(). */
Rep restrict(const Rep& m, const GroupPtr& h);
/* Pull back a representation of a quotient along projection: G -> Q. */
Rep inflate(const Rep& m, const GroupPtr& g, const std::vector<std::size_t>& projection);
Rep tensor(const Rep& a, const Rep& b);
Rep dual(const Rep& m);
Rep direct_sum(const Rep& a, const Rep& b);
Rep direct_sum(const std::vector<Rep>& parts, const GroupPtr& g, const Field& f);
/* Action on an invariant subspace, in its echelon basis. */
Rep submodule_rep(const Rep& m, const Subspace& w);
/* Action on M / W in the basis of standard vectors outside the pivots of W. */
Rep quotient_rep(const Rep& m, const Subspace& w);
/* Action on an invariant subspace spanned by the columns of basis (full column rank). */
Rep restrict_to_columns(const Rep& m, const Matrix& basis);
bool is_invariant(const Rep& m, const Subspace& w);

/* Basis of Hom_G(M, N) as dim N x dim M matrices. */
std::vector<Matrix> hom_space(const Rep& m, const Rep& n);
std::size_t hom_dim(const Rep& m, const Rep& n);

/* Simples of k[G] discovered so far, pairwise non-isomorphic. */
class SimpleRegistry {
public:
    SimpleRegistry(GroupPtr g, Field f) : g_(std::move(g)), f_(std::move(f)) {}

    const GroupPtr& group() const { return g_; }
    const Field& field() const { return f_; }
    std::size_t size() const { return simples_.size(); }
    const Rep& simple(std::size_t i) const { return simples_.at(i); }
    std::size_t end_dim(std::size_t i) const { return end_dims_.at(i); }
    const std::vector<std::string>& log() const { return log_; }

    /* s must be simple. */
    std::optional<std::size_t> find(const Rep& s) const;
    std::size_t find_or_add(const Rep& s);

private:
    std::vector<elem_t> traces(const Rep& s) const;
    GroupPtr g_;
    Field f_;
    std::vector<Rep> simples_;
    std::vector<std::vector<elem_t>> traces_;
    std::vector<std::size_t> end_dims_;
    std::vector<std::string> log_;
};

/* Element of K_0(G, k) in the basis of registered simples.  Coefficients
 * past the stored length are zero, so vectors survive registry growth. */
class ClassVector {
public:
    ClassVector() = default;
    explicit ClassVector(const SimpleRegistry* reg) : reg_(reg) {}
    ClassVector(const SimpleRegistry* reg, std::vector<Rational> c);

    const SimpleRegistry* registry() const { return reg_; }
    std::size_t size() const { return c_.size(); }
    Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    void add(std::size_t i, Rational v);

    bool is_integral() const;
    bool is_zero() const;
    /* Sum of coefficient times simple dimension. */
    Rational dim() const;
    std::vector<Rational> padded(std::size_t n) const;

    ClassVector operator-() const;
    friend ClassVector operator+(const ClassVector& a, const ClassVector& b);
    friend ClassVector operator-(const ClassVector& a, const ClassVector& b);
    friend ClassVector operator*(Rational s, const ClassVector& a);
    friend bool operator==(const ClassVector& a, const ClassVector& b);
    friend bool operator!=(const ClassVector& a, const ClassVector& b) { return !(a == b); }

    std::string to_string() const;

private:
    const SimpleRegistry* reg_ = nullptr;
    std::vector<Rational> c_;
};

struct SubmoduleSearch {
    std::optional<Subspace> submodule; // proper nonzero invariant subspace
    bool irreducible = false;
};

/* One MeatAxe pass with the Holt-Rees form of Norton's test: either a
 * proper submodule or a certificate of irreducibility over k. */
SubmoduleSearch find_submodule(const Rep& m, Rng& rng, std::size_t max_tries = 256);
bool is_irreducible(const Rep& m, Rng& rng);

/* Composition factors as registry multiplicities; new simples are appended. */
ClassVector chop(const Rep& m, SimpleRegistry& reg, Rng& rng);

bool is_isomorphic(const Rep& m, const Rep& n, Rng& rng, std::size_t max_tries = 256);

/* Fitting splitting by random endomorphisms.  A summand is declared
 * indecomposable after `locality_tries` endomorphisms all have
 * prime-power characteristic polynomial. */
std::vector<Rep> indecomposable_summands(const Rep& m, Rng& rng, std::size_t dim_cap = 400,
                                         std::size_t locality_tries = 96);

/* Free over k[P] for a Sylow p-subgroup P. */
bool is_projective(const Rep& m);
/* hom_dim(M, S) / hom_dim(S, S); throws when not integral. */
std::size_t head_multiplicity(const Rep& m, const Rep& s);

/* Cov(M) = Ind_C^I Res_C M with C a complement to the normal p-subgroup
 * p1 of I = m.group(); p1 must act trivially on M. */
Rep projective_cover_over_inertia(const Rep& m, const Subgroup& p1);

/* Eigenvalue exponents of each p-regular class representative, taken in an
 * extension containing the needed roots of unity. */
std::string class_fingerprint(const Rep& m);

std::string to_string(const Rational& r);

} // namespace equirr
