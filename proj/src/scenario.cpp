#include "equirr/scenario.hpp"

#include "equirr/error.hpp"
#include "equirr/search.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace equirr {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw input_error(path + ": " + msg);
}

const json& need(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key)) fail(path, "missing field '" + key + "'");
    return j.at(key);
}

std::int64_t to_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::uint32_t to_uint(const json& j, const std::string& path, std::int64_t lo = 0)
{
    auto v = to_int(j, path);
    if (v < lo || v > 1'000'000) fail(path, "integer out of range");
    return static_cast<std::uint32_t>(v);
}

const json& to_array(const json& j, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::string at(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

// integer -> prime-field image; array -> coordinates over the prime field
elem_t element_from_json(const Field& f, const json& j, const std::string& path)
{
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    const auto& a = to_array(j, path);
    if (a.size() > f.degree()) fail(path, "too many coordinates for " + std::to_string(f.order()) + " elements");
    std::vector<std::uint32_t> c;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto v = to_int(a[i], at(path, i));
        c.push_back(static_cast<std::uint32_t>(((v % f.characteristic()) + f.characteristic()) % f.characteristic()));
    }
    c.resize(f.degree(), 0);
    return f.from_coefficients(c);
}

Poly poly_from_json(const Field& f, const json& j, const std::string& path)
{
    if (j.is_number_integer()) return Poly::constant(f, element_from_json(f, j, path));
    const auto& a = to_array(j, path);
    std::vector<elem_t> c;
    for (std::size_t i = 0; i < a.size(); ++i) c.push_back(element_from_json(f, a[i], at(path, i)));
    return Poly(f, c);
}

Field field_from_json(const json& j, const std::string& path)
{
    std::uint32_t p = to_uint(need(j, "p", path), path + ".p", 2);
    std::uint32_t n = j.contains("n") ? to_uint(j.at("n"), path + ".n", 1) : 1;
    try {
        return Field::make(p, n);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

GroupPtr pgl2_from_json(const Field& f, const json& j, const std::string& path)
{
    const auto& gens = to_array(need(j, "generators", path), path + ".generators");
    std::vector<Mobius> mob;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string gp = at(path + ".generators", i);
        const auto& rows = to_array(gens[i], gp);
        if (rows.size() != 2 || !rows[0].is_array() || !rows[1].is_array() || rows[0].size() != 2 ||
            rows[1].size() != 2)
            fail(gp, "expected a 2x2 matrix [[a,b],[c,d]]");
        elem_t a = element_from_json(f, rows[0][0], gp + "[0][0]"), b = element_from_json(f, rows[0][1], gp + "[0][1]");
        elem_t c = element_from_json(f, rows[1][0], gp + "[1][0]"), d = element_from_json(f, rows[1][1], gp + "[1][1]");
        if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) fail(gp, "matrix is singular");
        mob.push_back(Mobius::normalized(f, a, b, c, d));
    }
    return FiniteGroup::close_generators(f, mob);
}

GroupPtr table_from_json(const json& j, const std::string& path)
{
    std::size_t size = to_uint(need(j, "size", path), path + ".size", 1);
    const auto& rows = to_array(need(j, "table", path), path + ".table");
    if (rows.size() != size) fail(path + ".table", "expected " + std::to_string(size) + " rows");
    std::vector<std::vector<std::size_t>> t(size);
    for (std::size_t i = 0; i < size; ++i) {
        const auto& r = to_array(rows[i], at(path + ".table", i));
        for (std::size_t k = 0; k < r.size(); ++k) t[i].push_back(to_uint(r[k], at(at(path + ".table", i), k)));
    }
    auto g = FiniteGroup::from_table(t);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b)
            for (std::size_t c = 0; c < size; ++c)
                if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c))) fail(path + ".table", "not associative");
    return g;
}

void check_closed(const GroupPtr& g, const std::vector<std::size_t>& elems, const std::string& path)
{
    std::set<std::size_t> s(elems.begin(), elems.end());
    if (!s.count(0)) fail(path, "subgroup must contain the identity (element 0)");
    for (auto a : s) {
        if (a >= g->order()) fail(path, "element " + std::to_string(a) + " out of range");
        for (auto b : s)
            if (!s.count(g->mul(a, b))) fail(path, "not closed under multiplication");
    }
}

std::vector<std::size_t> index_list(const json& j, const std::string& path)
{
    std::vector<std::size_t> out;
    const auto& a = to_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(to_uint(a[i], at(path, i)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// positions of `sub` inside the sorted element list of `outer`
std::vector<std::size_t> local_positions(const Subgroup& outer, const std::vector<std::size_t>& sub,
                                         const std::string& path)
{
    std::vector<std::size_t> out;
    for (auto s : sub) {
        auto it = std::find(outer.elements.begin(), outer.elements.end(), s);
        if (it == outer.elements.end()) fail(path, "element " + std::to_string(s) + " is not in the enclosing group");
        out.push_back(static_cast<std::size_t>(it - outer.elements.begin()));
    }
    return out;
}

Poly frobenius_of_x(const Field& f, const Poly& modulus, std::int64_t k)
{
    Poly x = Poly::x(f) % modulus;
    for (std::int64_t i = 0; i < k; ++i) {
        Poly acc = Poly::constant(f, 1), base = x;
        for (std::uint64_t e = f.order(); e; e >>= 1) {
            if (e & 1) acc = acc * base % modulus;
            base = base * base % modulus;
        }
        x = acc;
    }
    return x;
}

bool is_homomorphism(const Rep& r)
{
    const auto& g = *r.group();
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (r.image(g.mul(a, b)) != r.image(a) * r.image(b)) return false;
    return true;
}

OrbitTerm abstract_orbit(const GroupPtr& g, const Field& f, const json& j, const std::string& path)
{
    OrbitTerm o;
    RamificationDatum& r = o.datum;
    o.n = static_cast<int>(to_int(need(j, "n", path), path + ".n"));
    r.degree = j.contains("degree") ? static_cast<int>(to_uint(j.at("degree"), path + ".degree", 1)) : 1;
    if (r.degree > 12) fail(path + ".degree", "residue degree too large");

    auto dec = j.contains("decomposition") ? index_list(j.at("decomposition"), path + ".decomposition")
                                           : std::vector<std::size_t>{0};
    check_closed(g, dec, path + ".decomposition");
    r.decomposition = make_subgroup(g, dec);
    o.size = j.contains("size") ? to_uint(j.at("size"), path + ".size", 1) : g->order() / dec.size();
    if (o.size * dec.size() != g->order()) fail(path + ".size", "orbit size times |G_P| must equal |G|");

    r.residue_modulus = r.degree == 1 ? Poly::x(f) : least_irreducible(f, r.degree);
    if (j.contains("modulus")) {
        r.residue_modulus = poly_from_json(f, j.at("modulus"), path + ".modulus");
        if (r.residue_modulus.degree() != r.degree || !r.residue_modulus.is_monic() ||
            !is_irreducible(r.residue_modulus))
            fail(path + ".modulus", "expected a monic irreducible polynomial of the residue degree");
    }

    const auto& action = to_array(need(j, "action", path), path + ".action");
    if (action.size() != dec.size()) fail(path + ".action", "expected one entry per decomposition element");
    r.galois_x.assign(dec.size(), Poly(f));
    r.cotangent.assign(dec.size(), Poly(f));
    std::vector<bool> seen(dec.size(), false);
    std::vector<std::size_t> inertia_local;
    for (std::size_t i = 0; i < action.size(); ++i) {
        const std::string ap = at(path + ".action", i);
        std::size_t el = to_uint(need(action[i], "element", ap), ap + ".element");
        auto it = std::find(dec.begin(), dec.end(), el);
        if (it == dec.end()) fail(ap + ".element", "not in the decomposition group");
        std::size_t pos = static_cast<std::size_t>(it - dec.begin());
        if (seen[pos]) fail(ap + ".element", "listed twice");
        seen[pos] = true;
        std::int64_t frob = action[i].contains("frobenius") ? to_int(action[i].at("frobenius"), ap + ".frobenius") : 0;
        frob = ((frob % r.degree) + r.degree) % r.degree;
        r.galois_x[pos] = frobenius_of_x(f, r.residue_modulus, frob);
        r.cotangent[pos] = poly_from_json(f, need(action[i], "cotangent", ap), ap + ".cotangent") % r.residue_modulus;
        if (r.cotangent[pos].is_zero()) fail(ap + ".cotangent", "must be a unit of the residue field");
        if (frob == 0) inertia_local.push_back(pos);
    }

    std::vector<std::size_t> inertia_global;
    for (auto i : inertia_local) inertia_global.push_back(dec[i]);
    if (j.contains("inertia") && index_list(j.at("inertia"), path + ".inertia") != inertia_global)
        fail(path + ".inertia", "must be the elements acting trivially on the residue field");
    r.inertia = make_subgroup(r.decomposition.group, inertia_local);
    r.e = r.inertia.order();
    r.f = r.decomposition.order() / r.e;
    if (r.degree % static_cast<int>(r.f) != 0) fail(path, "(G_P : I_P) must divide the residue degree");

    std::vector<std::size_t> wild_global{0};
    if (j.contains("wild")) wild_global = index_list(j.at("wild"), path + ".wild");
    auto wild_local = local_positions(r.inertia, local_positions(r.decomposition, wild_global, path + ".wild"),
                                      path + ".wild");
    check_closed(r.inertia.group, wild_local, path + ".wild");
    r.wild = make_subgroup(r.inertia.group, wild_local);
    r.e_w = r.wild.order();
    const auto p = f.characteristic();
    if (p_part(r.e, p) != r.e_w || !is_normal(r.wild))
        fail(path + ".wild", "must be the normal Sylow " + std::to_string(p) + "-subgroup of the inertia group");
    r.e_t = r.e / r.e_w;

    if (j.contains("filtration")) {
        const auto& fl = to_array(j.at("filtration"), path + ".filtration");
        for (std::size_t i = 0; i < fl.size(); ++i) r.filtration.push_back(to_uint(fl[i], at(path + ".filtration", i), 1));
        if (r.filtration.empty() || r.filtration.front() != r.e || r.filtration.back() != 1 ||
            (r.filtration.size() > 1 && r.filtration[1] != r.e_w))
            fail(path + ".filtration", "must start at |I_P|, continue with |G_{P,1}| and end at 1");
    } else if (r.e_w > 1) {
        r.filtration = {r.e, r.e_w, 1};
    } else if (r.e > 1) {
        r.filtration = {r.e, 1};
    } else {
        r.filtration = {1};
    }

    if (!is_homomorphism(cotangent_power(r, 0)) || !is_homomorphism(cotangent_power(r, 1)))
        fail(path + ".action", "the residue-field and cotangent data do not define a semilinear action");
    auto wild_cot = restrict(inertia_cotangent_power(r, 1), r.wild.group);
    for (std::size_t i = 0; i < wild_cot.group()->order(); ++i)
        if (!wild_cot.image(i).is_identity()) fail(path + ".action", "the wild subgroup must act trivially on the cotangent line");
    return o;
}

Divisor divisor_from_json(const GroupPtr& g, const json& j, const std::string& path)
{
    Divisor d;
    const auto& a = to_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string ep = at(path, i);
        if (a[i].is_object()) {
            Place p = place_from_json(g->field(), need(a[i], "orbit_of", ep), ep + ".orbit_of");
            int n = static_cast<int>(to_int(need(a[i], "n", ep), ep + ".n"));
            for (const auto& q : place_orbit(g, p)) d.add(q, n);
            continue;
        }
        if (!a[i].is_array() || a[i].size() != 2) fail(ep, "expected [place, coefficient] or {\"orbit_of\": place, \"n\": k}");
        Place p = place_from_json(g->field(), a[i][0], ep + "[0]");
        d.add(p, static_cast<int>(to_int(a[i][1], ep + "[1]")));
    }
    return d;
}

} // namespace

std::string to_string(Mode m)
{
    return m == Mode::oracle ? "oracle" : "abstract";
}

Mode parse_mode(const std::string& s)
{
    if (s == "oracle") return Mode::oracle;
    if (s == "abstract") return Mode::abstract;
    throw input_error("mode must be 'oracle' or 'abstract', got '" + s + "'");
}

json place_to_json(const Place& p)
{
    if (p.is_infinity()) return "inf";
    json a = json::array();
    const Field& f = p.poly().field();
    for (elem_t c : p.poly().coeffs()) {
        if (f.degree() == 1)
            a.push_back(f.coefficients(c).front());
        else
            a.push_back(f.coefficients(c));
    }
    return a;
}

Place place_from_json(const Field& f, const json& j, const std::string& path)
{
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") fail(path, "the only named place is \"inf\"");
        return Place::infinity();
    }
    Poly p = poly_from_json(f, j, path);
    if (p.degree() < 1 || !p.is_monic() || !is_irreducible(p)) fail(path, "expected a monic irreducible polynomial");
    return Place::finite(p);
}

CoverModel Scenario::model() const
{
    if (has_abstract_payload && mode == Mode::abstract) {
        CoverModel m;
        m.group = group;
        m.field = field;
        m.genus_y = genus_y;
        m.orbits = abstract_orbits;
        return m;
    }
    if (!group->is_pgl2()) throw input_error("a table group needs an abstract ramification payload");
    return curve_model(ramification_table(group), divisor);
}

Scenario parse_scenario(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("scenario must be a JSON object");
    Scenario s;
    s.source = j;
    s.id = j.contains("id") && j.at("id").is_string() ? j.at("id").get<std::string>() : "scenario";
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) fail("seed", "expected a non-negative integer");
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) fail("mode", "expected a string");
        s.mode = parse_mode(j.at("mode").get<std::string>());
    }

    const json& gj = need(j, "group", "scenario");
    if (!gj.contains("kind") || !gj.at("kind").is_string()) fail("group.kind", "expected pgl2, table or s3-search");
    s.group_kind = gj.at("kind").get<std::string>();
    if (s.group_kind == "pgl2") {
        s.field = field_from_json(gj, "group");
        s.group = pgl2_from_json(s.field, gj, "group");
    } else if (s.group_kind == "s3-search") {
        s.field = field_from_json(gj, "group");
        auto g = s3_with_inert_point(s.field);
        if (!g) fail("group", "no S_3 with an order-3 element of irreducible characteristic polynomial over " +
                                  std::to_string(s.field.order()) + " elements");
        s.group = *g;
    } else if (s.group_kind == "table") {
        s.field = field_from_json(need(j, "field", "scenario"), "field");
        s.group = table_from_json(gj, "group");
    } else {
        fail("group.kind", "unknown kind '" + s.group_kind + "'");
    }

    if (j.contains("divisor")) {
        if (!s.group->is_pgl2()) fail("divisor", "a divisor on P^1 needs a PGL_2 group");
        s.divisor = divisor_from_json(s.group, j.at("divisor"), "divisor");
        if (auto orbit = non_equivariant_orbit(s.divisor, s.group)) {
            std::string names;
            for (const auto& p : *orbit) names += (names.empty() ? "" : ", ") + p.to_string();
            fail("divisor", "coefficients differ along the orbit {" + names + "}");
        }
    }

    if (j.contains("ramification")) {
        const json& rj = j.at("ramification");
        s.has_abstract_payload = true;
        s.genus_y = rj.contains("genus_y") ? static_cast<int>(to_uint(rj.at("genus_y"), "ramification.genus_y")) : 0;
        const auto& orbits = to_array(need(rj, "orbits", "ramification"), "ramification.orbits");
        for (std::size_t i = 0; i < orbits.size(); ++i)
            s.abstract_orbits.push_back(abstract_orbit(s.group, s.field, orbits[i], at("ramification.orbits", i)));
    }
    if (s.mode == Mode::abstract && !s.has_abstract_payload && !s.group->is_pgl2())
        fail("ramification", "abstract mode with a table group needs a ramification payload");
    if (s.mode == Mode::oracle && !s.group->is_pgl2()) fail("mode", "oracle mode needs a PGL_2 group");

    if (j.contains("exponents")) {
        const auto& e = to_array(j.at("exponents"), "exponents");
        for (std::size_t i = 0; i < e.size(); ++i) {
            std::vector<int> row;
            const auto& r = to_array(e[i], at("exponents", i));
            for (std::size_t k = 0; k < r.size(); ++k) row.push_back(static_cast<int>(to_int(r[k], at(at("exponents", i), k))));
            s.exponents.push_back(std::move(row));
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw input_error("cannot read scenario file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_scenario(os.str());
}

} // namespace equirr
