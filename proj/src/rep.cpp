#include "equirr/rep.hpp"

#include "equirr/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace equirr {

namespace {

void check_same(const Rep& a, const Rep& b, const char* what)
{
    if (a.group() != b.group()) throw internal_error(std::string(what) + ": representations of different groups");
    if (a.field() != b.field()) throw internal_error(std::string(what) + ": representations over different fields");
}

std::vector<elem_t> unit_vector(std::size_t n, std::size_t i)
{
    std::vector<elem_t> v(n, 0);
    v[i] = 1;
    return v;
}

elem_t random_elem(const Field& f, Rng& rng)
{
    return static_cast<elem_t>(rng() % f.order());
}

Matrix random_algebra_element(const Rep& m, Rng& rng)
{
    const Field& f = m.field();
    Matrix a(f, m.dim(), m.dim());
    for (std::size_t g = 0; g < m.group()->order(); ++g) {
        elem_t c = random_elem(f, rng);
        if (!c) continue;
        axpy(f, a.data(), m.image(g).entries(), c);
    }
    return a;
}

Matrix random_combination(const Field& f, const std::vector<Matrix>& basis, std::size_t rows, std::size_t cols,
                          Rng& rng)
{
    Matrix a(f, rows, cols);
    for (const auto& b : basis) axpy(f, a.data(), b.entries(), random_elem(f, rng));
    return a;
}

} // namespace

Rep::Rep(GroupPtr g, Field f, std::size_t dim, std::vector<Matrix> images)
    : g_(std::move(g)), f_(std::move(f)), dim_(dim), images_(std::move(images))
{
    if (images_.size() != g_->order()) throw internal_error("representation needs one image per group element");
    for (const auto& m : images_)
        if (m.rows() != dim_ || m.cols() != dim_ || m.field() != f_)
            throw internal_error("representation image has the wrong shape");
    if (!images_[0].is_identity()) throw internal_error("identity must act trivially");
    const auto& gens = g_->generators();
    for (std::size_t s : gens)
        for (std::size_t t : gens)
            if (images_[g_->mul(s, t)] != images_[s] * images_[t])
                throw internal_error("representation is not multiplicative on generators");
}

Rep Rep::from_generators(GroupPtr g, Field f, std::size_t dim, const std::vector<Matrix>& gen_images)
{
    const auto& gens = g->generators();
    if (gen_images.size() != gens.size()) throw input_error("wrong number of generator images");
    for (const auto& m : gen_images)
        if (m.rows() != dim || m.cols() != dim) throw input_error("generator image has the wrong shape");
    std::vector<std::optional<Matrix>> img(g->order());
    img[0] = Matrix::identity(f, dim);
    std::vector<std::size_t> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        std::size_t x = queue[i];
        for (std::size_t k = 0; k < gens.size(); ++k) {
            std::size_t y = g->mul(x, gens[k]);
            Matrix prod = *img[x] * gen_images[k];
            if (!img[y]) {
                img[y] = std::move(prod);
                queue.push_back(y);
            } else if (*img[y] != prod) {
                throw input_error("generator images do not define a homomorphism");
            }
        }
    }
    std::vector<Matrix> all;
    all.reserve(img.size());
    for (auto& m : img) all.push_back(std::move(*m));
    return Rep(std::move(g), std::move(f), dim, std::move(all));
}

std::vector<Matrix> Rep::generator_images() const
{
    std::vector<Matrix> out;
    for (std::size_t s : g_->generators()) out.push_back(images_[s]);
    return out;
}

Rep trivial_rep(const GroupPtr& g, const Field& f, std::size_t dim)
{
    return Rep(g, f, dim, std::vector<Matrix>(g->order(), Matrix::identity(f, dim)));
}

Rep zero_rep(const GroupPtr& g, const Field& f)
{
    return Rep(g, f, 0, std::vector<Matrix>(g->order(), Matrix(f, 0, 0)));
}

Rep regular_rep(const GroupPtr& g, const Field& f)
{
    const std::size_t n = g->order();
    std::vector<Matrix> imgs;
    imgs.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        Matrix m(f, n, n);
        for (std::size_t h = 0; h < n; ++h) m(g->mul(x, h), h) = 1;
        imgs.push_back(std::move(m));
    }
    return Rep(g, f, n, std::move(imgs));
}

Rep induce(const Rep& m, const GroupPtr& g)
{
    const auto& h = m.group();
    auto emb = embedding_map(*h, *g);
    const std::size_t n = g->order();
    std::vector<std::size_t> local(n, n);
    for (std::size_t i = 0; i < emb.size(); ++i) local[emb[i]] = i;
    std::vector<std::size_t> reps, coset_of(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        if (coset_of[x] != n) continue;
        for (std::size_t e : emb) coset_of[g->mul(x, e)] = reps.size();
        reps.push_back(x);
    }
    const std::size_t d = m.dim(), k = reps.size();
    const Field& f = m.field();
    std::vector<Matrix> imgs;
    imgs.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        Matrix img(f, k * d, k * d);
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t y = g->mul(x, reps[j]);
            std::size_t i = coset_of[y];
            std::size_t hh = local[g->mul(g->inv(reps[i]), y)];
            img.set_block(i * d, j * d, m.image(hh));
        }
        imgs.push_back(std::move(img));
    }
    return Rep(g, f, k * d, std::move(imgs));
}

Rep restrict(const Rep& m, const GroupPtr& h)
{
    auto emb = embedding_map(*h, *m.group());
    std::vector<Matrix> imgs;
    imgs.reserve(emb.size());
    for (std::size_t e : emb) imgs.push_back(m.image(e));
    return Rep(h, m.field(), m.dim(), std::move(imgs));
}

Rep inflate(const Rep& m, const GroupPtr& g, const std::vector<std::size_t>& projection)
{
    if (projection.size() != g->order()) throw internal_error("inflate: projection has the wrong length");
    std::vector<Matrix> imgs;
    imgs.reserve(g->order());
    for (std::size_t x = 0; x < g->order(); ++x) {
        if (projection[x] >= m.group()->order()) throw internal_error("inflate: projection out of range");
        imgs.push_back(m.image(projection[x]));
    }
    return Rep(g, m.field(), m.dim(), std::move(imgs));
}

Rep tensor(const Rep& a, const Rep& b)
{
    check_same(a, b, "tensor");
    std::vector<Matrix> imgs;
    imgs.reserve(a.group()->order());
    for (std::size_t x = 0; x < a.group()->order(); ++x) imgs.push_back(kronecker(a.image(x), b.image(x)));
    return Rep(a.group(), a.field(), a.dim() * b.dim(), std::move(imgs));
}

Rep dual(const Rep& m)
{
    std::vector<Matrix> imgs;
    imgs.reserve(m.group()->order());
    for (std::size_t x = 0; x < m.group()->order(); ++x) imgs.push_back(m.image(m.group()->inv(x)).transpose());
    return Rep(m.group(), m.field(), m.dim(), std::move(imgs));
}

Rep direct_sum(const Rep& a, const Rep& b)
{
    check_same(a, b, "direct sum");
    std::vector<Matrix> imgs;
    imgs.reserve(a.group()->order());
    for (std::size_t x = 0; x < a.group()->order(); ++x) imgs.push_back(direct_sum(a.image(x), b.image(x)));
    return Rep(a.group(), a.field(), a.dim() + b.dim(), std::move(imgs));
}

Rep direct_sum(const std::vector<Rep>& parts, const GroupPtr& g, const Field& f)
{
    std::size_t dim = 0;
    for (const auto& p : parts) {
        if (p.group() != g || p.field() != f) throw internal_error("direct sum: mismatched summand");
        dim += p.dim();
    }
    std::vector<Matrix> imgs;
    imgs.reserve(g->order());
    for (std::size_t x = 0; x < g->order(); ++x) {
        Matrix img(f, dim, dim);
        std::size_t off = 0;
        for (const auto& p : parts) {
            img.set_block(off, off, p.image(x));
            off += p.dim();
        }
        imgs.push_back(std::move(img));
    }
    return Rep(g, f, dim, std::move(imgs));
}

bool is_invariant(const Rep& m, const Subspace& w)
{
    for (std::size_t s : m.group()->generators())
        for (const auto& b : w.basis())
            if (!w.contains(m.image(s).apply(b))) return false;
    return true;
}

Rep submodule_rep(const Rep& m, const Subspace& w)
{
    if (!is_invariant(m, w)) throw internal_error("subspace is not invariant");
    const Field& f = m.field();
    const std::size_t k = w.dim();
    std::vector<Matrix> imgs;
    imgs.reserve(m.group()->order());
    for (std::size_t x = 0; x < m.group()->order(); ++x) {
        Matrix img(f, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            auto c = w.coordinates(m.image(x).apply(w.basis()[j]));
            for (std::size_t i = 0; i < k; ++i) img(i, j) = c[i];
        }
        imgs.push_back(std::move(img));
    }
    return Rep(m.group(), f, k, std::move(imgs));
}

Rep quotient_rep(const Rep& m, const Subspace& w)
{
    if (!is_invariant(m, w)) throw internal_error("subspace is not invariant");
    const Field& f = m.field();
    auto comp = w.complement();
    const std::size_t k = comp.size();
    std::vector<Matrix> imgs;
    imgs.reserve(m.group()->order());
    for (std::size_t x = 0; x < m.group()->order(); ++x) {
        Matrix img(f, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            auto v = m.image(x).column(comp[j]);
            w.reduce(v);
            for (std::size_t i = 0; i < k; ++i) img(i, j) = v[comp[i]];
        }
        imgs.push_back(std::move(img));
    }
    return Rep(m.group(), f, k, std::move(imgs));
}

Rep restrict_to_columns(const Rep& m, const Matrix& basis)
{
    Subspace w(m.field(), m.dim());
    for (std::size_t j = 0; j < basis.cols(); ++j) w.insert(basis.column(j));
    return submodule_rep(m, w);
}

std::vector<Matrix> hom_space(const Rep& m, const Rep& n)
{
    check_same(m, n, "hom_space");
    const Field& f = m.field();
    const std::size_t nm = m.dim(), nn = n.dim();
    if (nm == 0 || nn == 0) return {};
    const auto& gens = m.group()->generators();

    // Standard basis of M: spin one seed at a time and remember how each
    // basis vector was reached, so its image under a homomorphism is a
    // fixed linear function of the images of the seeds.
    struct Node {
        std::size_t parent = 0, gen = 0, seed = 0;
        bool is_seed = false;
    };
    std::vector<Node> nodes;
    std::vector<std::vector<elem_t>> raw;
    Subspace span(f, nm);
    std::size_t seeds = 0;
    for (std::size_t e = 0; e < nm && span.dim() < nm; ++e) {
        auto v = unit_vector(nm, e);
        if (!span.insert(v)) continue;
        std::size_t start = raw.size();
        raw.push_back(std::move(v));
        nodes.push_back({0, 0, seeds++, true});
        for (std::size_t head = start; head < raw.size(); ++head)
            for (std::size_t k = 0; k < gens.size(); ++k) {
                auto w = m.image(gens[k]).apply(raw[head]);
                if (span.insert(w)) {
                    raw.push_back(std::move(w));
                    nodes.push_back({head, k, 0, false});
                }
            }
    }
    const std::size_t unknowns = seeds * nn;
    std::vector<Matrix> wmap;
    wmap.reserve(nm);
    for (const auto& node : nodes) {
        if (node.is_seed) {
            Matrix w(f, nn, unknowns);
            for (std::size_t i = 0; i < nn; ++i) w(i, node.seed * nn + i) = 1;
            wmap.push_back(std::move(w));
        } else {
            wmap.push_back(n.image(gens[node.gen]) * wmap[node.parent]);
        }
    }
    Matrix b = Matrix::from_columns(f, nm, raw);
    auto binv = inverse(b);
    if (!binv) throw internal_error("spun basis is singular");

    Subspace eqs(f, unknowns);
    for (std::size_t k = 0; k < gens.size() && eqs.dim() < unknowns; ++k) {
        Matrix c = *binv * m.image(gens[k]) * b;
        for (std::size_t j = 0; j < nm && eqs.dim() < unknowns; ++j) {
            Matrix lhs = n.image(gens[k]) * wmap[j];
            for (std::size_t l = 0; l < nm; ++l)
                if (c(l, j)) axpy(f, lhs.data(), wmap[l].entries(), f.neg(c(l, j)));
            for (std::size_t r = 0; r < nn; ++r) {
                auto row = lhs.row(r);
                if (std::any_of(row.begin(), row.end(), [](elem_t x) { return x != 0; }))
                    eqs.insert(std::vector<elem_t>(row.begin(), row.end()));
            }
        }
    }
    Matrix sys = Matrix::from_rows(f, unknowns, eqs.basis());
    Matrix sol = eqs.dim() ? nullspace(sys) : Matrix::identity(f, unknowns);
    std::vector<Matrix> out;
    out.reserve(sol.cols());
    for (std::size_t s = 0; s < sol.cols(); ++s) {
        auto u = sol.column(s);
        Matrix img(f, nn, nm);
        for (std::size_t j = 0; j < nm; ++j) {
            auto col = wmap[j].apply(u);
            for (std::size_t i = 0; i < nn; ++i) img(i, j) = col[i];
        }
        out.push_back(img * *binv);
    }
    return out;
}

std::size_t hom_dim(const Rep& m, const Rep& n)
{
    return hom_space(m, n).size();
}

std::vector<elem_t> SimpleRegistry::traces(const Rep& s) const
{
    std::vector<elem_t> t;
    t.reserve(s.group()->order());
    for (const auto& img : s.images()) t.push_back(img.trace());
    return t;
}

std::optional<std::size_t> SimpleRegistry::find(const Rep& s) const
{
    if (s.group() != g_ || s.field() != f_) throw internal_error("registry: simple of a different group or field");
    auto t = traces(s);
    for (std::size_t i = 0; i < simples_.size(); ++i) {
        if (simples_[i].dim() != s.dim() || traces_[i] != t) continue;
        if (hom_dim(s, simples_[i]) > 0) return i;
    }
    return std::nullopt;
}

std::size_t SimpleRegistry::find_or_add(const Rep& s)
{
    if (auto i = find(s)) return *i;
    simples_.push_back(s);
    traces_.push_back(traces(s));
    end_dims_.push_back(hom_dim(s, s));
    std::ostringstream os;
    os << "S" << simples_.size() - 1 << ": dim " << s.dim() << ", End dim " << end_dims_.back();
    log_.push_back(os.str());
    return simples_.size() - 1;
}

ClassVector::ClassVector(const SimpleRegistry* reg, std::vector<Rational> c) : reg_(reg), c_(std::move(c)) {}

void ClassVector::add(std::size_t i, Rational v)
{
    if (c_.size() <= i) c_.resize(i + 1, Rational(0));
    c_[i] += v;
}

bool ClassVector::is_integral() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.denominator() == 1; });
}

bool ClassVector::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.numerator() == 0; });
}

Rational ClassVector::dim() const
{
    Rational d(0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i].numerator() != 0) d += c_[i] * static_cast<std::int64_t>(reg_->simple(i).dim());
    return d;
}

std::vector<Rational> ClassVector::padded(std::size_t n) const
{
    std::vector<Rational> out(std::max(n, c_.size()), Rational(0));
    std::copy(c_.begin(), c_.end(), out.begin());
    return out;
}

static const SimpleRegistry* common_registry(const ClassVector& a, const ClassVector& b)
{
    if (a.registry() && b.registry() && a.registry() != b.registry())
        throw internal_error("class vectors over different registries");
    return a.registry() ? a.registry() : b.registry();
}

ClassVector ClassVector::operator-() const
{
    ClassVector r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

ClassVector operator+(const ClassVector& a, const ClassVector& b)
{
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
    return ClassVector(common_registry(a, b), std::move(c));
}

ClassVector operator-(const ClassVector& a, const ClassVector& b)
{
    return a + (-b);
}

ClassVector operator*(Rational s, const ClassVector& a)
{
    ClassVector r = a;
    for (auto& c : r.c_) c *= s;
    return r;
}

bool operator==(const ClassVector& a, const ClassVector& b)
{
    common_registry(a, b);
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::string to_string(const Rational& r)
{
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

std::string ClassVector::to_string() const
{
    std::ostringstream os;
    os << "(";
    std::size_t n = reg_ ? std::max(reg_->size(), c_.size()) : c_.size();
    for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << equirr::to_string((*this)[i]);
    os << ")";
    return os.str();
}

SubmoduleSearch find_submodule(const Rep& m, Rng& rng, std::size_t max_tries)
{
    const std::size_t n = m.dim();
    const Field& f = m.field();
    if (n == 0) return {};
    if (n == 1) return {std::nullopt, true};
    auto gens = m.generator_images();
    std::vector<Matrix> gens_t;
    for (const auto& g : gens) gens_t.push_back(g.transpose());
    for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
        Matrix a = random_algebra_element(m, rng);
        auto factors = factor(charpoly(a), rng);
        for (const auto& fac : factors) {
            Matrix kernel = nullspace(evaluate(fac.poly, a));
            auto v = kernel.column(0);
            Subspace w = spin(f, n, {v}, gens);
            if (w.dim() < n) return {std::move(w), false};
            if (kernel.cols() != static_cast<std::size_t>(fac.poly.degree())) continue;
            // every nonzero kernel vector generates the whole module; test the dual
            Matrix kt = nullspace(evaluate(fac.poly, a.transpose()));
            Subspace wt = spin(f, n, {kt.column(0)}, gens_t);
            if (wt.dim() == n) return {std::nullopt, true};
            Matrix ann = nullspace(Matrix::from_rows(f, n, wt.basis()));
            Subspace u(f, n);
            for (std::size_t j = 0; j < ann.cols(); ++j) u.insert(ann.column(j));
            return {std::move(u), false};
        }
    }
    throw cap_exceeded("MeatAxe did not settle a module of dimension " + std::to_string(n) + " after " +
                       std::to_string(max_tries) + " random elements; rerun with another seed");
}

bool is_irreducible(const Rep& m, Rng& rng)
{
    return find_submodule(m, rng).irreducible;
}

ClassVector chop(const Rep& m, SimpleRegistry& reg, Rng& rng)
{
    if (m.group() != reg.group() || m.field() != reg.field())
        throw internal_error("chop: registry belongs to another group or field");
    ClassVector cv(&reg);
    std::vector<Rep> work{m};
    while (!work.empty()) {
        Rep x = std::move(work.back());
        work.pop_back();
        if (x.dim() == 0) continue;
        auto res = find_submodule(x, rng);
        if (res.irreducible) {
            cv.add(reg.find_or_add(x), 1);
            continue;
        }
        work.push_back(quotient_rep(x, *res.submodule));
        work.push_back(submodule_rep(x, *res.submodule));
    }
    return cv;
}

bool is_isomorphic(const Rep& m, const Rep& n, Rng& rng, std::size_t max_tries)
{
    check_same(m, n, "is_isomorphic");
    if (m.dim() != n.dim()) return false;
    if (m.dim() == 0) return true;
    auto hs = hom_space(m, n);
    if (hs.empty()) return false;
    if (hom_dim(m, m) != hs.size() || hom_dim(n, n) != hs.size()) return false;
    for (std::size_t t = 0; t < max_tries; ++t) {
        Matrix phi = random_combination(m.field(), hs, n.dim(), m.dim(), rng);
        if (rank(phi) == m.dim()) return true;
    }
    throw cap_exceeded("isomorphism test undecided after " + std::to_string(max_tries) + " random intertwiners");
}

std::vector<Rep> indecomposable_summands(const Rep& m, Rng& rng, std::size_t dim_cap, std::size_t locality_tries)
{
    if (m.dim() > dim_cap)
        throw cap_exceeded("module of dimension " + std::to_string(m.dim()) + " exceeds the splitting cap");
    const Field& f = m.field();
    std::vector<Rep> out;
    std::vector<Rep> work{m};
    while (!work.empty()) {
        Rep x = std::move(work.back());
        work.pop_back();
        if (x.dim() == 0) continue;
        if (x.dim() == 1) {
            out.push_back(std::move(x));
            continue;
        }
        auto ends = hom_space(x, x);
        bool split = false;
        for (std::size_t t = 0; t < locality_tries && ends.size() > 1 && !split; ++t) {
            Matrix phi = random_combination(f, ends, x.dim(), x.dim(), rng);
            auto cp = charpoly(phi);
            auto fs = factor(cp, rng);
            if (fs.size() < 2) continue;
            Poly part = Poly::constant(f, 1);
            for (int i = 0; i < fs[0].multiplicity; ++i) part = part * fs[0].poly;
            Poly rest = cp / part;
            Matrix k1 = nullspace(evaluate(part, phi));
            Matrix k2 = nullspace(evaluate(rest, phi));
            if (k1.cols() + k2.cols() != x.dim()) throw internal_error("Fitting decomposition lost dimension");
            work.push_back(restrict_to_columns(x, k2));
            work.push_back(restrict_to_columns(x, k1));
            split = true;
        }
        if (!split) out.push_back(std::move(x));
    }
    return out;
}

bool is_projective(const Rep& m)
{
    const auto& g = m.group();
    const std::uint64_t p = m.field().characteristic();
    if (g->order() % p != 0 || m.dim() == 0) return true;
    auto syl = sylow_subgroup(g, p);
    const std::size_t n = m.dim();
    Subspace im(m.field(), n);
    for (std::size_t e : syl.elements) {
        if (e == 0) continue;
        Matrix d = m.image(e) - Matrix::identity(m.field(), n);
        for (std::size_t j = 0; j < n && im.dim() < n; ++j) im.insert(d.column(j));
    }
    return n == syl.order() * (n - im.dim());
}

std::size_t head_multiplicity(const Rep& m, const Rep& s)
{
    if (m.dim() == 0) return 0;
    std::size_t h = hom_dim(m, s), e = hom_dim(s, s);
    if (e == 0 || h % e != 0) throw internal_error("head multiplicity is not integral");
    return h / e;
}

Rep projective_cover_over_inertia(const Rep& m, const Subgroup& p1)
{
    const auto& i = m.group();
    if (p1.parent != i) throw internal_error("cover: p-subgroup is not a subgroup of the module's group");
    const std::uint64_t p = m.field().characteristic();
    if (p_part(p1.order(), p) != p1.order()) throw internal_error("cover: subgroup is not a p-group");
    if (!is_normal(p1)) throw internal_error("cover: p-subgroup is not normal");
    for (std::size_t e : p1.elements)
        if (!m.image(e).is_identity()) throw internal_error("cover: p-subgroup does not act trivially");
    auto c = schur_zassenhaus_complement(i, p1);
    return induce(restrict(m, c.group), i);
}

std::string class_fingerprint(const Rep& m)
{
    const auto& g = m.group();
    const Field& f = m.field();
    const std::uint64_t p = f.characteristic();
    std::vector<std::size_t> reps;
    std::uint64_t expo = 1;
    for (const auto& cls : conjugacy_classes(*g)) {
        std::size_t x = cls.front();
        if (g->element_order(x) % p == 0) continue;
        reps.push_back(x);
        expo = std::lcm(expo, static_cast<std::uint64_t>(g->element_order(x)));
    }
    // smallest L with expo | q^L - 1
    std::uint32_t ext = 1;
    std::uint64_t qpow = f.order() % expo;
    while ((qpow + expo - 1) % expo != 0) {
        qpow = (qpow * f.order()) % expo;
        ++ext;
    }
    Field big = Field::make(f.characteristic(), f.degree() * ext);
    const auto& emb = embedding(f, big);
    const std::uint64_t step = (big.order() - 1) / expo;
    Rng rng(0);
    std::ostringstream os;
    for (std::size_t x : reps) {
        auto cp = charpoly(m.image(x));
        std::vector<elem_t> c;
        for (elem_t v : cp.coeffs()) c.push_back(emb(v));
        std::vector<std::uint64_t> expos;
        for (const auto& fac : factor(Poly(big, c), rng)) {
            if (fac.poly.degree() != 1) throw internal_error("fingerprint: eigenvalue outside the ambient field");
            elem_t root = big.neg(fac.poly.coeff(0));
            std::uint64_t j = big.log(root) / step;
            for (int k = 0; k < fac.multiplicity; ++k) expos.push_back(j);
        }
        std::sort(expos.begin(), expos.end());
        os << "[" << x << ":";
        for (std::size_t i = 0; i < expos.size(); ++i) os << (i ? "," : "") << expos[i];
        os << "]";
    }
    return os.str();
}

} // namespace equirr
