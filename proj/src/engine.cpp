#include "equirr/engine.hpp"

#include "equirr/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace equirr {

namespace {

int mod(int a, int m)
{
    int r = a % m;
    return r < 0 ? r + m : r;
}

Rational rat(std::int64_t v)
{
    return Rational(v);
}

std::string join(const std::vector<std::size_t>& v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

} // namespace

LMDecomp lm_decompose(int n, std::size_t e_t, std::size_t e_w)
{
    const int et = static_cast<int>(e_t), ew = static_cast<int>(e_w);
    if (et < 1 || ew < 1) throw input_error("lm_decompose: ramification indices must be positive");
    if (mod(n + 1, ew) != 0)
        throw input_error("coefficient " + std::to_string(n) + " is not -1 mod " + std::to_string(ew));
    int q = (n - ew + 1) / ew;
    LMDecomp out;
    out.l = mod(q, et);
    out.m = (q - out.l) / et;
    return out;
}

int CoverModel::divisor_degree() const
{
    int d = 0;
    for (const auto& o : orbits) d += static_cast<int>(o.size) * o.datum.degree * o.n;
    return d;
}

bool CoverModel::is_tame() const
{
    return std::all_of(orbits.begin(), orbits.end(), [](const OrbitTerm& o) { return o.datum.e_w == 1; });
}

bool CoverModel::is_weakly_ramified() const
{
    return std::all_of(orbits.begin(), orbits.end(), [](const OrbitTerm& o) {
        return o.datum.filtration.size() <= 2 || o.datum.filtration[2] == 1;
    });
}

bool CoverModel::congruence_condition() const
{
    return std::all_of(orbits.begin(), orbits.end(),
                       [](const OrbitTerm& o) { return mod(o.n + 1, static_cast<int>(o.datum.e_w)) == 0; });
}

int CoverModel::genus_x() const
{
    // 2 g_X - 2 = |G| (2 g_Y - 2) + deg of the different
    std::int64_t rhs = static_cast<std::int64_t>(group->order()) * (2 * genus_y - 2);
    for (const auto& o : orbits) {
        std::int64_t local = 0;
        for (std::size_t s : o.datum.filtration) local += static_cast<std::int64_t>(s) - 1;
        rhs += static_cast<std::int64_t>(o.size) * o.datum.degree * local;
    }
    if (rhs % 2 != 0 || rhs < -2) throw input_error("ramification data give a non-integral or negative genus");
    return static_cast<int>(rhs / 2 + 1);
}

Divisor CoverModel::divisor() const
{
    Divisor d;
    for (const auto& o : orbits) {
        if (o.places.empty()) throw input_error("abstract ramification data have no places");
        for (const auto& p : o.places) d.set(p, o.n);
    }
    return d;
}

CoverModel curve_model(const RamificationTable& t, const Divisor& d)
{
    const auto& g = t.group;
    if (auto orbit = non_equivariant_orbit(d, g)) {
        std::string names;
        for (const auto& p : *orbit) names += (names.empty() ? "" : ", ") + p.to_string();
        throw input_error("divisor is not constant on the orbit {" + names + "}");
    }
    CoverModel m;
    m.group = g;
    m.field = g->field();
    std::set<Place> covered;
    for (std::size_t i = 0; i < t.orbits.size(); ++i) {
        OrbitTerm o;
        o.places = t.orbits[i];
        o.size = o.places.size();
        o.datum = t.data[i];
        o.n = d.coefficient(o.places.front());
        covered.insert(o.places.begin(), o.places.end());
        m.orbits.push_back(std::move(o));
    }
    for (const auto& [p, n] : d.terms()) {
        if (covered.count(p)) continue;
        OrbitTerm o;
        o.places = place_orbit(g, p);
        o.size = o.places.size();
        o.datum = ramification_datum(g, o.places.front());
        o.n = n;
        covered.insert(o.places.begin(), o.places.end());
        m.orbits.push_back(std::move(o));
    }
    return m;
}

CoverModel with_alternate_representatives(const CoverModel& m)
{
    CoverModel out = m;
    for (auto& o : out.orbits) {
        if (o.places.size() < 2) continue;
        std::rotate(o.places.begin(), o.places.end() - 1, o.places.end());
        o.datum = ramification_datum(m.group, o.places.front());
    }
    return out;
}

Engine::Engine(GroupPtr g, Field f, std::uint64_t seed)
    : g_(std::move(g)), f_(std::move(f)), rng_(seed), reg_(std::make_unique<SimpleRegistry>(g_, f_))
{
}

const CartanData& Engine::cartan()
{
    if (!cartan_) cartan_ = cartan_data(*reg_, rng_);
    return *cartan_;
}

ClassVector Engine::regular_class()
{
    if (!regular_) regular_ = chop(regular_rep(g_, f_), *reg_, rng_);
    return *regular_;
}

ClassVector Engine::class_of(const Rep& m)
{
    if (m.group() != g_) throw internal_error("class_of: module over another group");
    return chop(m, *reg_, rng_);
}

Engine::Local& Engine::local(const GroupPtr& h)
{
    auto it = locals_.find(h.get());
    if (it != locals_.end()) return it->second;
    Local l;
    l.group = h;
    l.registry = std::make_unique<SimpleRegistry>(h, f_);
    return locals_.emplace(h.get(), std::move(l)).first->second;
}

SimpleRegistry& Engine::local_registry(const GroupPtr& h)
{
    return *local(h).registry;
}

const CartanData& Engine::local_cartan(const GroupPtr& h)
{
    Local& l = local(h);
    if (!l.cartan) l.cartan = cartan_data(*l.registry, rng_);
    return *l.cartan;
}

const ClassVector& Engine::induced_pim_class(const GroupPtr& h, std::size_t j)
{
    const CartanData& cd = local_cartan(h);
    Local& l = local(h);
    auto it = l.induced.find(j);
    if (it == l.induced.end()) it = l.induced.emplace(j, class_of(induce(cd.pims.at(j), g_))).first;
    return it->second;
}

Rep induced_cover(const RamificationDatum& datum, int e, const GroupPtr& target)
{
    Rep v = inertia_cotangent_power(datum, e);
    return induce(projective_cover_over_inertia(v, datum.wild), target);
}

ClassVector n_module_via_sum(Engine& eng, const CoverModel& m)
{
    ClassVector total(&eng.registry());
    for (const auto& o : m.orbits) {
        const auto& r = o.datum;
        for (int d = 1; d < static_cast<int>(r.e_t); ++d) {
            auto cls = eng.class_of(induced_cover(r, d, eng.group()));
            total = total + rat(static_cast<std::int64_t>(o.size * r.e_w) * d) * cls;
        }
    }
    ClassVector n = Rational(1, static_cast<std::int64_t>(eng.group()->order())) * total;
    if (!n.is_integral()) throw internal_error("ramification module from the point sum is not integral: " + n.to_string());
    return n;
}

ClassVector n_module_via_chi(Engine& eng, const CoverModel& m)
{
    if (m.genus_y != 0) throw input_error("the cohomological route needs the P^1 oracle");
    Divisor e;
    for (const auto& o : m.orbits) {
        if (o.places.empty()) throw input_error("the cohomological route needs concrete places");
        for (const auto& p : o.places) e.set(p, static_cast<int>(o.datum.e_w) - 1);
    }
    Rep h0 = rr_action_rep(eng.group(), e);
    return rat(1 - m.genus_y) * eng.regular_class() - eng.class_of(h0);
}

WpdResult wpd_class(Engine& eng, const RamificationDatum& datum, int d)
{
    const GroupPtr& gp = datum.decomposition.group;
    WpdResult w;
    w.d = d;
    w.f = datum.f;
    Rep v = inertia_cotangent_power(datum, -d);
    Rep cov = projective_cover_over_inertia(v, datum.wild);
    Rep ind = induce(cov, gp);
    w.projective = is_projective(ind);

    const CartanData& cd = eng.local_cartan(gp);
    SimpleRegistry& reg = eng.local_registry(gp);
    bool divisible = true;
    for (std::size_t s = 0; s < reg.size(); ++s) {
        std::size_t h = head_multiplicity(ind, reg.simple(s));
        w.head_multiplicities.push_back(h);
        divisible = divisible && h % w.f == 0;
        w.pim_multiplicities.push_back(h / w.f);
    }
    if (!divisible)
        throw internal_error("head multiplicities {" + join(w.head_multiplicities) + "} of the induced cover (d = " +
                             std::to_string(d) + ") are not divisible by f = " + std::to_string(w.f));

    w.local_class = ClassVector(&reg);
    w.induced_integral = ClassVector(&eng.registry());
    for (std::size_t s = 0; s < reg.size(); ++s) {
        if (w.pim_multiplicities[s] == 0) continue;
        Rational k = rat(static_cast<std::int64_t>(w.pim_multiplicities[s]));
        w.local_class = w.local_class + k * cd.pim_classes[s];
        w.induced_integral = w.induced_integral + k * eng.induced_pim_class(gp, s);
    }
    if (rat(static_cast<std::int64_t>(w.f)) * w.local_class != chop(ind, reg, eng.rng()))
        throw internal_error("head multiplicities do not reassemble the induced cover");
    w.projective_class = is_projective_class(w.local_class, cd);
    w.induced_rational =
        Rational(1, static_cast<std::int64_t>(w.f)) * eng.class_of(induce(cov, eng.group()));
    return w;
}

ChiFormula chi_formula(Engine& eng, const CoverModel& m, const ClassVector& n_class)
{
    if (!m.is_weakly_ramified()) throw input_error("the integral formula needs a weakly ramified cover");
    if (!m.congruence_condition()) throw input_error("the integral formula needs n_P = -1 mod e_w everywhere");
    ChiFormula out;
    out.n_class = n_class;
    out.regular_coefficient = rat(1 - m.genus_y);
    ClassVector w_int(&eng.registry()), w_rat(&eng.registry());
    for (std::size_t i = 0; i < m.orbits.size(); ++i) {
        const auto& o = m.orbits[i];
        OrbitContribution c;
        c.orbit = i;
        c.n = o.n;
        c.lm = lm_decompose(o.n, o.datum.e_t, o.datum.e_w);
        c.quotient_degree = o.datum.quotient_degree();
        out.regular_coefficient += rat(static_cast<std::int64_t>(c.quotient_degree) * c.lm.m);
        for (int d = 1; d <= c.lm.l; ++d) {
            c.w.push_back(wpd_class(eng, o.datum, d));
            w_int = w_int + c.w.back().induced_integral;
            w_rat = w_rat + c.w.back().induced_rational;
        }
        out.orbits.push_back(std::move(c));
    }
    ClassVector reg = out.regular_coefficient * eng.regular_class();
    out.integral = -n_class + w_int + reg;
    out.rational = -n_class + w_rat + reg;
    return out;
}

ChiTimesN chi_times_n(Engine& eng, const CoverModel& m)
{
    ChiTimesN out;
    Rational half_sum(0);
    for (const auto& o : m.orbits)
        half_sum += rat(static_cast<std::int64_t>(o.size) * o.datum.degree * (static_cast<std::int64_t>(o.datum.e_t) - 1));
    out.c = rat(1 - m.genus_x()) + rat(m.divisor_degree()) + half_sum / rat(2);
    if (out.c.denominator() != 1) throw internal_error("the constant C = " + to_string(out.c) + " is not an integer");
    ClassVector sum(&eng.registry());
    for (const auto& o : m.orbits) {
        const auto& r = o.datum;
        for (int d = 1; d < static_cast<int>(r.e_t); ++d) {
            Rep ind = induce(inertia_cotangent_power(r, d - o.n), eng.group());
            sum = sum + rat(static_cast<std::int64_t>(o.size * r.e_w) * d) * eng.class_of(ind);
        }
    }
    out.rhs = out.c * eng.regular_class() - sum;
    return out;
}

std::vector<std::vector<int>> line_bundle_exponents(const CoverModel& m)
{
    std::vector<std::vector<int>> out;
    for (const auto& o : m.orbits) out.push_back({mod(o.n, static_cast<int>(o.datum.e_t))});
    return out;
}

ClassVector chi_tame_rank_r(Engine& eng, const CoverModel& m, const std::vector<std::vector<int>>& exponents,
                            const ClassVector& n_class)
{
    if (!m.is_tame()) throw input_error("the rank-r congruence needs a tame cover");
    if (exponents.size() != m.orbits.size()) throw input_error("one exponent list per orbit is required");
    const std::size_t r = exponents.empty() ? 1 : exponents.front().size();
    ClassVector out = -rat(static_cast<std::int64_t>(r)) * n_class;
    for (std::size_t i = 0; i < m.orbits.size(); ++i) {
        const auto& datum = m.orbits[i].datum;
        if (exponents[i].size() != r) throw input_error("fiber exponent lists have different lengths");
        for (int l : exponents[i]) {
            if (l < 0 || l >= static_cast<int>(datum.e)) throw input_error("fiber exponent out of range");
            for (int d = 1; d <= l; ++d) out = out + wpd_class(eng, datum, d).induced_integral;
        }
    }
    return out;
}

std::optional<std::int64_t> regular_multiple(const ClassVector& a, const ClassVector& b, const ClassVector& regular)
{
    ClassVector diff = a - b;
    std::size_t i = 0;
    while (i < regular.size() && regular[i].numerator() == 0) ++i;
    if (i == regular.size()) return diff.is_zero() ? std::optional<std::int64_t>(0) : std::nullopt;
    Rational t = diff[i] / regular[i];
    if (t.denominator() != 1 || diff != t * regular) return std::nullopt;
    return t.numerator();
}

StructureChecks structure_checks(Engine& eng, const RamificationDatum& datum, int d)
{
    if (datum.e_w != 1) throw input_error("structure checks apply at tame points");
    const GroupPtr& gp = datum.decomposition.group;
    SimpleRegistry& reg = eng.local_registry(gp);
    Rep v = cotangent_power(datum, -d);
    auto v_class = chop(v, reg, eng.rng());
    StructureChecks s;
    s.w_is_cotangent_power = wpd_class(eng, datum, d).local_class == v_class;
    auto ind = chop(induce(restrict(v, datum.inertia.group), gp), reg, eng.rng());
    s.induce_restrict = ind == rat(static_cast<std::int64_t>(datum.f)) * v_class;
    return s;
}

ProjectivityVerdicts projectivity_predicates(Engine& eng, const CoverModel& m, const Rep& h0)
{
    ProjectivityVerdicts v;
    v.h0_projective = is_projective(h0);
    ClassVector chi = eng.class_of(h0);
    const CartanData& cd = eng.cartan();
    v.chi_in_cartan_image = in_cartan_image(chi, cd);
    v.chi_projective_class = is_projective_class(chi, cd);
    v.weakly_ramified = m.is_weakly_ramified();
    v.tame = m.is_tame();
    v.congruence = m.congruence_condition();
    v.degree_large = m.divisor_degree() > 2 * m.genus_x() - 2;
    return v;
}

} // namespace equirr
