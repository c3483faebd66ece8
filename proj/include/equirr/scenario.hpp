#pragma once

#include "equirr/engine.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace equirr {

enum class Mode { oracle, abstract };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/* A validated scenario file.  In oracle mode the group is a PGL_2 group and
 * `divisor` an equivariant divisor on P^1.  In abstract mode the orbits come
 * from `abstract_orbits` when the file carries a ramification payload, and
 * from the PGL_2 action otherwise. */
struct Scenario {
    std::string id;
    Field field;
    GroupPtr group;
    std::string group_kind; // pgl2 | table | s3-search
    Mode mode = Mode::oracle;
    std::uint64_t seed = 0;
    Divisor divisor;
    int genus_y = 0;
    std::vector<OrbitTerm> abstract_orbits;
    bool has_abstract_payload = false;
    /* Optional fiber exponents for the tame rank-r check, one list per orbit. */
    std::vector<std::vector<int>> exponents;
    nlohmann::json source;

    /* Orbit model for the active mode. */
    CoverModel model() const;
};

/* Throws input_error with the offending field path. */
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/* "inf" or a coefficient array. */
nlohmann::json place_to_json(const Place& p);
Place place_from_json(const Field& f, const nlohmann::json& j, const std::string& path);

} // namespace equirr
