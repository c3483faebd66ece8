#include "equirr/search.hpp"

#include "equirr/poly.hpp"

#include <set>

namespace equirr {

namespace {

std::vector<Mobius> all_mobius(const Field& f)
{
    std::set<Mobius> seen;
    const elem_t q = static_cast<elem_t>(f.order());
    for (elem_t a = 0; a < q; ++a)
        for (elem_t b = 0; b < q; ++b)
            for (elem_t c = 0; c < q; ++c)
                for (elem_t d = 0; d < q; ++d)
                    if (f.sub(f.mul(a, d), f.mul(b, c)) != 0) seen.insert(Mobius::normalized(f, a, b, c, d));
    return {seen.begin(), seen.end()};
}

bool has_irreducible_charpoly(const Field& f, const Mobius& m)
{
    elem_t trace = f.add(m.a, m.d), det = f.sub(f.mul(m.a, m.d), f.mul(m.b, m.c));
    return is_irreducible(Poly(f, {det, f.neg(trace), 1}));
}

} // namespace

std::optional<GroupPtr> s3_with_inert_point(const Field& f)
{
    if (f.order() > 64) return std::nullopt;
    const auto elems = all_mobius(f);
    const Mobius id = Mobius::normalized(f, 1, 0, 0, 1);
    for (const auto& r : elems) {
        if (r == id) continue;
        Mobius r2 = compose(f, r, r);
        if (compose(f, r2, r) != id || !has_irreducible_charpoly(f, r)) continue;
        for (const auto& s : elems) {
            if (s == id || compose(f, s, s) != id) continue;
            if (compose(f, compose(f, s, r), s) != r2) continue;
            auto g = FiniteGroup::close_generators(f, std::vector<Mobius>{r, s});
            if (g->order() == 6) return g;
        }
    }
    return std::nullopt;
}

} // namespace equirr
