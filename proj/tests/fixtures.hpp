#pragma once

#include "equirr/group.hpp"

#include <algorithm>
#include <array>

namespace fixtures {

using namespace equirr;

// x -> x + 1 over GF(p)
inline GroupPtr cyclic_translations(std::uint32_t p)
{
    return FiniteGroup::close_generators(Field::make(p), std::vector<Mobius>{{1, 1, 0, 1}});
}

// permutations of {0,1,2} as an abstract table
inline GroupPtr s3()
{
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
        }
    return FiniteGroup::from_table(t);
}

// x -> a x + b over GF(p)
inline GroupPtr affine(std::uint32_t p)
{
    auto f = Field::make(p);
    return FiniteGroup::close_generators(f, std::vector<Mobius>{{1, 1, 0, 1}, {f.primitive_element(), 0, 0, 1}});
}

// x -> zeta x with zeta of order m in GF(q), q prime
inline GroupPtr kummer(std::uint32_t q, std::uint32_t m)
{
    auto f = Field::make(q);
    elem_t zeta = f.pow(f.primitive_element(), (q - 1) / m);
    return FiniteGroup::close_generators(f, std::vector<Mobius>{{zeta, 0, 0, 1}});
}

} // namespace fixtures

namespace fixtures {

// subgroup of PGL_2(GF(p^n)) generated by `count` random invertible matrices
inline GroupPtr random_pgl2_group(Rng& rng, const Field& f, std::size_t count)
{
    std::vector<Mobius> gens;
    while (gens.size() < count) {
        elem_t a = rng() % f.order(), b = rng() % f.order(), c = rng() % f.order(), d = rng() % f.order();
        if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) continue;
        gens.push_back(Mobius::normalized(f, a, b, c, d));
    }
    return FiniteGroup::close_generators(f, gens);
}

} // namespace fixtures
