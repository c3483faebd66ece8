#pragma once

#include "equirr/group.hpp"

#include <optional>

namespace equirr {

/* A copy of S_3 inside PGL_2(k): an order-3 element whose characteristic
 * polynomial is irreducible over k, together with an involution inverting
 * it by conjugation.  Deterministic; nullopt when k admits none (or q > 64). */
std::optional<GroupPtr> s3_with_inert_point(const Field& f);

} // namespace equirr
