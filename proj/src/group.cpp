#include "equirr/group.hpp"

#include "equirr/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace equirr {

Mobius Mobius::normalized(const Field& f, elem_t a, elem_t b, elem_t c, elem_t d)
{
    if (f.sub(f.mul(a, d), f.mul(b, c)) == 0)
        throw input_error("singular matrix is not in PGL_2");
    elem_t lead = a != 0 ? a : b; // a = b = 0 would be singular
    elem_t s = f.inv(lead);
    return {f.mul(a, s), f.mul(b, s), f.mul(c, s), f.mul(d, s)};
}

Mobius Mobius::from_matrix(const Matrix& m)
{
    if (m.rows() != 2 || m.cols() != 2) throw input_error("PGL_2 generator must be 2x2");
    return normalized(m.field(), m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

Matrix Mobius::to_matrix(const Field& f) const
{
    return Matrix(f, 2, 2, {a, b, c, d});
}

Mobius compose(const Field& f, const Mobius& s, const Mobius& t)
{
    // matrix product s * t, which is the map s after t
    return Mobius::normalized(f, f.add(f.mul(s.a, t.a), f.mul(s.b, t.c)), f.add(f.mul(s.a, t.b), f.mul(s.b, t.d)),
                              f.add(f.mul(s.c, t.a), f.mul(s.d, t.c)), f.add(f.mul(s.c, t.b), f.mul(s.d, t.d)));
}

Mobius inverse(const Field& f, const Mobius& s)
{
    return Mobius::normalized(f, s.d, f.neg(s.b), f.neg(s.c), s.a);
}

GroupPtr build_group(std::size_t n, std::vector<std::uint32_t> table, std::vector<Mobius> mobius, Field field,
                     GroupPtr parent, std::vector<std::size_t> to_parent)
{
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->table_ = std::move(table);
    g->mobius_ = std::move(mobius);
    g->field_ = std::move(field);
    g->parent_ = std::move(parent);
    g->to_parent_ = std::move(to_parent);
    g->finish();
    return g;
}

void FiniteGroup::finish()
{
    inv_.assign(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
            if (mul(a, b) == 0) {
                inv_[a] = b;
                break;
            }
    order_.assign(n_, 1);
    for (std::size_t a = 1; a < n_; ++a) {
        std::size_t x = a, k = 1;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        order_[a] = k;
    }
    // greedy generating set: take the least element outside the span so far
    gens_.clear();
    std::vector<char> in(n_, 0);
    in[0] = 1;
    std::vector<std::size_t> span{0};
    for (std::size_t cand = 1; cand < n_; ++cand) {
        if (in[cand]) continue;
        gens_.push_back(cand);
        std::deque<std::size_t> queue(span.begin(), span.end());
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t s : gens_) {
                std::size_t y = mul(x, s);
                if (!in[y]) {
                    in[y] = 1;
                    span.push_back(y);
                    queue.push_back(y);
                }
            }
        }
    }
}

std::size_t FiniteGroup::power(std::size_t a, std::int64_t e) const
{
    std::int64_t m = static_cast<std::int64_t>(order_[a]);
    e %= m;
    if (e < 0) e += m;
    std::size_t r = 0;
    for (std::int64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

std::optional<std::size_t> FiniteGroup::index_of(const Mobius& m) const
{
    for (std::size_t i = 0; i < mobius_.size(); ++i)
        if (mobius_[i] == m) return i;
    return std::nullopt;
}

bool FiniteGroup::is_abelian() const
{
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<std::size_t>>& rows)
{
    const std::size_t n = rows.size();
    if (n == 0) throw input_error("empty multiplication table");
    if (n > default_cap) throw cap_exceeded("group order exceeds " + std::to_string(default_cap));
    for (const auto& r : rows) {
        if (r.size() != n) throw input_error("multiplication table is not square");
        for (std::size_t v : r)
            if (v >= n) throw input_error("multiplication table entry out of range");
    }
    std::optional<std::size_t> e;
    for (std::size_t i = 0; i < n && !e; ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) ok = rows[i][j] == j && rows[j][i] == j;
        if (ok) e = i;
    }
    if (!e) throw input_error("multiplication table has no identity");
    // relabel so that the identity is element 0
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[*e]);
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = static_cast<std::uint32_t>(perm[rows[perm[i]][perm[j]]]);
    // Latin square
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> row(n, 0), col(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (row[table[i * n + j]]++ || col[table[j * n + i]]++)
                throw input_error("multiplication table is not a Latin square");
        }
    }
    auto at = [&](std::size_t a, std::size_t b) { return table[a * n + b]; };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) throw input_error("multiplication table is not associative");
    return build_group(n, std::move(table), {}, Field(), nullptr, {});
}

GroupPtr FiniteGroup::close_generators(const Field& f, const std::vector<Mobius>& gens, std::size_t cap)
{
    std::map<Mobius, std::size_t> index;
    std::vector<Mobius> elems{Mobius{}};
    index[Mobius{}] = 0;
    std::vector<Mobius> ng;
    for (const auto& g : gens) ng.push_back(Mobius::normalized(f, g.a, g.b, g.c, g.d));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& s : ng) {
            Mobius y = compose(f, s, elems[i]);
            if (!index.count(y)) {
                if (elems.size() >= cap)
                    throw cap_exceeded("group generated by the given matrices exceeds order " + std::to_string(cap));
                index[y] = elems.size();
                elems.push_back(y);
            }
        }
    }
    const std::size_t n = elems.size();
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = static_cast<std::uint32_t>(index.at(compose(f, elems[i], elems[j])));
    return build_group(n, std::move(table), std::move(elems), f, nullptr, {});
}

GroupPtr FiniteGroup::close_generators(const Field& f, const std::vector<Matrix>& gens, std::size_t cap)
{
    std::vector<Mobius> m;
    for (const auto& g : gens) m.push_back(Mobius::from_matrix(g));
    return close_generators(f, m, cap);
}

bool Subgroup::contains(std::size_t g) const
{
    return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup make_subgroup(const GroupPtr& parent, std::vector<std::size_t> elements)
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements[0] != 0) throw internal_error("subgroup must contain the identity");
    const std::size_t n = elements.size();
    std::vector<std::size_t> local(parent->order(), n);
    for (std::size_t i = 0; i < n; ++i) local[elements[i]] = i;
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t k = local[parent->mul(elements[i], elements[j])];
            if (k == n) throw internal_error("subset is not closed under multiplication");
            table[i * n + j] = static_cast<std::uint32_t>(k);
        }
    std::vector<Mobius> mob;
    if (parent->is_pgl2())
        for (std::size_t e : elements) mob.push_back(parent->mobius(e));
    Subgroup s;
    s.parent = parent;
    s.elements = elements;
    s.group = build_group(n, std::move(table), std::move(mob), parent->field(), parent, elements);
    return s;
}

static std::vector<std::size_t> closure(const FiniteGroup& g, const std::vector<std::size_t>& gens)
{
    std::vector<char> in(g.order(), 0);
    std::vector<std::size_t> out{0};
    in[0] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t s : gens) {
            std::size_t y = g.mul(out[i], s);
            if (!in[y]) {
                in[y] = 1;
                out.push_back(y);
            }
        }
    return out;
}

Subgroup generated_subgroup(const GroupPtr& parent, const std::vector<std::size_t>& gens)
{
    return make_subgroup(parent, closure(*parent, gens));
}

Subgroup whole_group(const GroupPtr& g)
{
    std::vector<std::size_t> all(g->order());
    std::iota(all.begin(), all.end(), 0);
    return make_subgroup(g, all);
}

Subgroup trivial_subgroup(const GroupPtr& g)
{
    return make_subgroup(g, {0});
}

Subgroup relative_subgroup(const Subgroup& sub, const Subgroup& h)
{
    std::vector<std::size_t> local;
    for (std::size_t e : sub.elements) {
        auto it = std::lower_bound(h.elements.begin(), h.elements.end(), e);
        if (it == h.elements.end() || *it != e) throw internal_error("subgroup does not lie in the given subgroup");
        local.push_back(static_cast<std::size_t>(it - h.elements.begin()));
    }
    return make_subgroup(h.group, local);
}

bool is_descendant(const FiniteGroup& h, const FiniteGroup& g)
{
    for (const FiniteGroup* x = &h; x; x = x->parent().get())
        if (x == &g) return true;
    return false;
}

std::vector<std::size_t> embedding_map(const FiniteGroup& h, const FiniteGroup& g)
{
    std::vector<std::size_t> map(h.order());
    std::iota(map.begin(), map.end(), 0);
    const FiniteGroup* x = &h;
    while (x != &g) {
        if (!x->parent()) throw internal_error("group is not a subgroup of the target");
        for (auto& v : map) v = x->to_parent(v);
        x = x->parent().get();
    }
    return map;
}

bool is_normal(const Subgroup& n)
{
    const auto& g = *n.parent;
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t h : n.elements)
            if (!n.contains(g.conj(x, h))) return false;
    return true;
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g)
{
    std::vector<char> seen(g.order(), 0);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t y = 0; y < g.order(); ++y) {
            std::size_t c = g.conj(y, x);
            if (!seen[c]) {
                seen[c] = 1;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.push_back(std::move(cls));
    }
    return out;
}

std::vector<std::size_t> p_regular_elements(const FiniteGroup& g, std::uint64_t p)
{
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < g.order(); ++x)
        if (g.element_order(x) % p != 0) out.push_back(x);
    return out;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p)
{
    std::uint64_t r = 1;
    while (n % p == 0) {
        n /= p;
        r *= p;
    }
    return r;
}

Subgroup sylow_subgroup(const GroupPtr& g, std::uint64_t p)
{
    const std::uint64_t target = p_part(g->order(), p);
    std::vector<std::size_t> gens;
    std::vector<std::size_t> cur{0};
    // Grow a p-subgroup one p-element at a time.  A p-subgroup that is not
    // Sylow has p dividing [N(S):S], so some extension always exists.
    while (cur.size() < target) {
        bool grew = false;
        std::vector<char> in(g->order(), 0);
        for (std::size_t e : cur) in[e] = 1;
        for (std::size_t x = 1; x < g->order() && !grew; ++x) {
            if (in[x] || p_part(g->element_order(x), p) != g->element_order(x)) continue;
            auto trial = gens;
            trial.push_back(x);
            auto span = closure(*g, trial);
            if (p_part(span.size(), p) == span.size()) {
                gens = std::move(trial);
                cur = std::move(span);
                grew = true;
            }
        }
        if (!grew) throw internal_error("Sylow search stalled");
    }
    return make_subgroup(g, cur);
}

Subgroup schur_zassenhaus_complement(const GroupPtr& i, const Subgroup& p_sub)
{
    const std::size_t m = i->order() / p_sub.order();
    if (std::gcd(m, p_sub.order()) != 1) throw internal_error("complement requires coprime order and index");
    auto meets_trivially = [&](const std::vector<std::size_t>& s) {
        for (std::size_t e : s)
            if (e != 0 && p_sub.contains(e)) return false;
        return true;
    };
    if (p_sub.order() == 1) return whole_group(i);
    for (std::size_t x = 0; x < i->order(); ++x)
        if (i->element_order(x) == m) return make_subgroup(i, closure(*i, {x}));
    // non-cyclic complement: grow subgroups of order dividing m that meet p_sub trivially
    auto reg = p_regular_elements(*i, prime_divisors(p_sub.order()).front());
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> frontier{{0}};
    std::vector<std::vector<std::size_t>> gens_of{{}};
    while (!frontier.empty()) {
        auto cur = std::move(frontier.back());
        auto gens = std::move(gens_of.back());
        frontier.pop_back();
        gens_of.pop_back();
        if (cur.size() == m) return make_subgroup(i, cur);
        for (std::size_t x : reg) {
            if (std::binary_search(cur.begin(), cur.end(), x)) continue;
            auto g2 = gens;
            g2.push_back(x);
            auto s = closure(*i, g2);
            std::sort(s.begin(), s.end());
            if (m % s.size() != 0 || !meets_trivially(s) || !seen.insert(s).second) continue;
            frontier.push_back(std::move(s));
            gens_of.push_back(std::move(g2));
        }
    }
    throw internal_error("no complement found");
}

std::vector<std::size_t> cosets(const Subgroup& h)
{
    const auto& g = *h.parent;
    std::vector<char> covered(g.order(), 0);
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (std::size_t e : h.elements) covered[g.mul(x, e)] = 1;
    }
    return reps;
}

QuotientGroup quotient(const Subgroup& normal)
{
    if (!is_normal(normal)) throw internal_error("quotient by a non-normal subgroup");
    const auto& g = *normal.parent;
    auto reps = cosets(normal);
    const std::size_t n = reps.size();
    std::vector<std::size_t> proj(g.order(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t e : normal.elements) proj[g.mul(reps[i], e)] = i;
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<std::uint32_t>(proj[g.mul(reps[i], reps[j])]);
    QuotientGroup q;
    q.group = build_group(n, std::move(table), {}, Field(), nullptr, {});
    q.projection = std::move(proj);
    q.kernel = normal;
    return q;
}

} // namespace equirr
