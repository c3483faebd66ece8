#include "equirr/commands.hpp"

#include "equirr/error.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace equirr {

using nlohmann::json;

namespace {

json rational_json(const Rational& r)
{
    if (r.denominator() == 1) return r.numerator();
    return to_string(r);
}

std::size_t matrix_order(const Matrix& m)
{
    Matrix p = m;
    std::size_t k = 1;
    while (!p.is_identity()) {
        p = p * m;
        if (++k > 100000) throw internal_error("matrix of unexpectedly large order");
    }
    return k;
}

// exponent of the cotangent character on the inertia group
std::size_t cotangent_order(const RamificationDatum& r)
{
    Rep c = inertia_cotangent_power(r, 1);
    std::size_t o = 1;
    for (std::size_t i = 0; i < c.group()->order(); ++i) o = std::lcm(o, matrix_order(c.image(i)));
    return o;
}

bool weakly_ramified(const RamificationDatum& r)
{
    return r.filtration.size() <= 2 || r.filtration[2] == 1;
}

std::string places_text(const OrbitTerm& o)
{
    if (o.places.empty()) return "(abstract)";
    std::string s = o.places.front().to_string();
    if (o.places.size() > 1) s += " (+" + std::to_string(o.places.size() - 1) + " more)";
    return s;
}

json divisor_json(const Divisor& d)
{
    json a = json::array();
    for (const auto& [p, n] : d.terms()) a.push_back(json::array({place_to_json(p), n}));
    return a;
}

// Builds one report; class vectors are padded once the registry stops growing.
class ReportBuilder {
public:
    ReportBuilder(Command c, const Scenario& s) : cmd_(c), s_(s), eng_(s.group, s.field, s.seed), model_(s.model())
    {
        report_ = json::object();
        report_["scenario"] = {
            {"id", s.id},
            {"command", to_string(c)},
            {"mode", to_string(s.mode)},
            {"seed", s.seed},
            {"field", {{"p", s.field.characteristic()}, {"n", s.field.degree()}}},
            {"group", {{"kind", s.group_kind}, {"order", s.group->order()}}},
            {"genus_y", model_.genus_y},
        };
        if (s.mode == Mode::oracle) report_["scenario"]["divisor"] = divisor_json(s.divisor);
        if (s.has_abstract_payload) report_["scenario"]["ramification"] = s.source.at("ramification");
        for (const char* k : {"ramification", "classes", "formulas", "verdicts", "audit"}) report_[k] = json::object();
        report_["ramification"] = json::array();
    }

    CommandResult run()
    {
        ramification();
        audit();
        if (cmd_ != Command::analyze) euler();
        if (cmd_ == Command::check) check();
        return finish();
    }

private:
    bool oracle() const { return s_.mode == Mode::oracle; }

    void line(const std::string& s) { text_ << s << '\n'; }

    void verdict(const std::string& name, bool ok, const std::string& note = "")
    {
        report_["verdicts"][name] = ok;
        all_pass_ = all_pass_ && ok;
        line(std::string(ok ? "  PASS " : "  FAIL ") + name + (note.empty() ? "" : "  (" + note + ")"));
    }

    void put_class(const json::json_pointer& ptr, const ClassVector& v) { pending_.emplace_back(ptr, v); }

    void ramification()
    {
        line("scenario " + s_.id + ": " + to_string(cmd_) + ", " + to_string(s_.mode) + " mode, |G| = " +
             std::to_string(s_.group->order()) + " over GF(" + std::to_string(s_.field.order()) + ")");
        line("ramification (place, orbit size, deg, e, e_t, e_w, f, filtration, n):");
        for (std::size_t i = 0; i < model_.orbits.size(); ++i) {
            const auto& o = model_.orbits[i];
            const auto& r = o.datum;
            json row = {
                {"orbit", i},
                {"size", o.size},
                {"degree", r.degree},
                {"e", r.e},
                {"e_t", r.e_t},
                {"e_w", r.e_w},
                {"f", r.f},
                {"filtration", r.filtration},
                {"n", o.n},
                {"cotangent_order", cotangent_order(r)},
                {"weakly_ramified", weakly_ramified(r)},
            };
            json places = json::array();
            for (const auto& p : o.places) places.push_back(place_to_json(p));
            row["places"] = places;
            row["representative"] = o.places.empty() ? json(nullptr) : place_to_json(o.places.front());
            report_["ramification"].push_back(row);
            std::ostringstream os;
            os << "  " << places_text(o) << "  " << o.size << "  " << r.degree << "  " << r.e << "  " << r.e_t << "  "
               << r.e_w << "  " << r.f << "  [";
            for (std::size_t k = 0; k < r.filtration.size(); ++k) os << (k ? "," : "") << r.filtration[k];
            os << "]  " << o.n << (weakly_ramified(r) ? "" : "  not weakly ramified");
            line(os.str());
        }
    }

    void audit()
    {
        std::int64_t diff = 0;
        for (const auto& o : model_.orbits) {
            std::int64_t local = 0;
            for (auto s : o.datum.filtration) local += static_cast<std::int64_t>(s) - 1;
            diff += static_cast<std::int64_t>(o.size) * o.datum.degree * local;
        }
        const auto n = static_cast<std::int64_t>(s_.group->order());
        const std::int64_t rhs = n * (2 * model_.genus_y - 2) + diff;
        json& a = report_["audit"];
        a["different_degree"] = diff;
        a["riemann_hurwitz_rhs"] = rhs;
        a["divisor_degree"] = model_.divisor_degree();
        line("audit:");
        if (oracle()) {
            a["genus_x"] = 0;
            a["riemann_hurwitz_lhs"] = -2;
            verdict("riemann_hurwitz", rhs == -2, "2 g_X - 2 = " + std::to_string(rhs));
        } else {
            int gx = model_.genus_x();
            a["genus_x"] = gx;
            a["riemann_hurwitz_lhs"] = 2 * gx - 2;
            verdict("riemann_hurwitz", 2 * static_cast<std::int64_t>(gx) - 2 == rhs, "g_X = " + std::to_string(gx));
        }
        report_["scenario"]["weakly_ramified"] = model_.is_weakly_ramified();
        report_["scenario"]["tame"] = model_.is_tame();
        report_["scenario"]["congruence"] = model_.congruence_condition();
    }

    void euler()
    {
        json& f = report_["formulas"];
        json& c = report_["classes"];
        const auto order = static_cast<std::int64_t>(s_.group->order());
        put_class(json::json_pointer("/classes/regular"), eng_.regular_class());
        line("formulas:");

        if (oracle()) {
            h0_ = rr_action_rep(s_.group, s_.divisor);
            oracle_ = eng_.class_of(*h0_);
            put_class(json::json_pointer("/classes/oracle"), *oracle_);
            c["oracle_dim"] = h0_->dim();
            line("  H^0(L(D)) has dimension " + std::to_string(h0_->dim()));
        }

        if (model_.is_weakly_ramified()) {
            n_ = n_module_via_sum(eng_, model_);
            put_class(json::json_pointer("/formulas/n_via_sum"), *n_);
            if (oracle()) {
                auto via_chi = n_module_via_chi(eng_, model_);
                put_class(json::json_pointer("/formulas/n_via_chi"), via_chi);
                verdict("n_routes_agree", via_chi == *n_);
            }
        } else {
            f["n_refused"] = "the point-sum route needs a weakly ramified cover";
        }

        std::string refusal;
        if (!model_.is_weakly_ramified())
            refusal = "not weakly ramified";
        else if (!model_.congruence_condition())
            refusal = "n_P = -1 mod e_w fails";
        if (refusal.empty()) {
            chi_ = chi_formula(eng_, model_, *n_);
            f["regular_coefficient"] = rational_json(chi_->regular_coefficient);
            f["representative"] = "least place of each orbit";
            json orbits = json::array();
            for (std::size_t i = 0; i < chi_->orbits.size(); ++i) {
                const auto& oc = chi_->orbits[i];
                json row = {{"orbit", oc.orbit}, {"n", oc.n}, {"l", oc.lm.l}, {"m", oc.lm.m},
                            {"quotient_degree", oc.quotient_degree}, {"w", json::array()}};
                orbits.push_back(row);
                for (std::size_t k = 0; k < oc.w.size(); ++k) {
                    const auto& w = oc.w[k];
                    orbits[i]["w"].push_back({{"d", w.d},
                                              {"f", w.f},
                                              {"head_multiplicities", w.head_multiplicities},
                                              {"pim_multiplicities", w.pim_multiplicities}});
                    put_class(json::json_pointer("/formulas/orbits/" + std::to_string(i) + "/w/" + std::to_string(k) +
                                                 "/induced"),
                              w.induced_integral);
                }
            }
            f["orbits"] = orbits;
            put_class(json::json_pointer("/formulas/integral"), chi_->integral);
            put_class(json::json_pointer("/formulas/rational"), chi_->rational);
            line("  integral formula: regular coefficient " + to_string(chi_->regular_coefficient));
            verdict("rational_equals_integral", chi_->rational == chi_->integral);
            if (oracle()) {
                verdict("oracle_equals_integral", chi_->integral == *oracle_);
                auto alt = with_alternate_representatives(model_);
                verdict("representative_independence", chi_formula(eng_, alt, *n_).integral == chi_->integral);
            }
        } else {
            f["integral_refused"] = refusal;
            line("  integral formula refused: " + refusal);
        }

        auto t = chi_times_n(eng_, model_);
        f["chi_times_n"] = {{"c", rational_json(t.c)}};
        put_class(json::json_pointer("/formulas/chi_times_n/rhs"), t.rhs);
        line("  |G| chi identity: C = " + to_string(t.c));
        if (oracle()) {
            verdict("chi_times_n_identity", Rational(order) * *oracle_ == t.rhs);
        } else {
            verdict("chi_times_n_divisible", (Rational(1, order) * t.rhs).is_integral());
            if (chi_) verdict("chi_times_n_matches_integral", Rational(order) * chi_->integral == t.rhs);
        }
    }

    void check()
    {
        line("checks:");
        json& f = report_["formulas"];
        std::optional<ClassVector> chi = oracle_ ? oracle_ : (chi_ ? std::optional(chi_->integral) : std::nullopt);

        if (oracle()) {
            auto v = projectivity_predicates(eng_, model_, *h0_);
            f["projectivity"] = {{"h0_projective", v.h0_projective},
                                 {"chi_in_cartan_image", v.chi_in_cartan_image},
                                 {"chi_projective_class", v.chi_projective_class},
                                 {"degree_large", v.degree_large}};
            line(std::string("  H^0 projective: ") + (v.h0_projective ? "true" : "false") +
                 (!v.h0_projective && v.degree_large && !(v.weakly_ramified && v.congruence)
                      ? ", as predicted (weak ramification or the congruence fails)"
                      : ""));
            verdict("tame_implies_cartan_image", v.tame_implication());
            verdict("sufficient_condition", v.sufficient_implication());
            verdict("necessary_condition", v.necessary_implication());
        } else if (chi) {
            const auto& cd = eng_.cartan();
            f["projectivity"] = {{"chi_in_cartan_image", in_cartan_image(*chi, cd)},
                                 {"chi_projective_class", is_projective_class(*chi, cd)}};
            if (model_.is_tame()) verdict("tame_implies_cartan_image", in_cartan_image(*chi, cd));
            if (chi_) verdict("sufficient_condition", is_projective_class(*chi, cd));
        }

        // scalar extension to the quadratic extension
        Field ext = Field::make(s_.field.characteristic(), 2 * s_.field.degree());
        SimpleRegistry ext_reg(s_.group, ext);
        const auto& base_cd = eng_.cartan();
        auto ext_cd = cartan_data(ext_reg, eng_.rng());
        json cart = json::object();
        auto cart_check = [&](const std::string& name, const ClassVector& v) {
            auto r = cartesian_check(v, base_cd, ext_cd, ext_reg, eng_.rng());
            cart[name] = {{"over_base", r.over_base}, {"over_extension", r.over_extension}};
            verdict("cartesian_" + name, r.agree());
        };
        if (chi) cart_check("chi", *chi);
        cart_check("trivial", eng_.class_of(trivial_rep(s_.group, s_.field)));
        f["cartesian"] = cart;

        json wpd = json::array(), structure = json::array();
        for (std::size_t i = 0; i < model_.orbits.size(); ++i) {
            const auto& r = model_.orbits[i].datum;
            if (!r.is_ramified() || !weakly_ramified(r)) continue;
            for (int d = 1; d < static_cast<int>(r.e_t); ++d) {
                auto w = wpd_class(eng_, r, d);
                wpd.push_back({{"orbit", i}, {"d", d}, {"f", w.f}, {"head_multiplicities", w.head_multiplicities}});
                verdict("w_projective_orbit" + std::to_string(i) + "_d" + std::to_string(d), w.projective && w.projective_class);
            }
            if (r.e_w != 1) continue;
            for (int d = 0; d < static_cast<int>(r.e_t); ++d) {
                auto sc = structure_checks(eng_, r, d);
                structure.push_back({{"orbit", i}, {"d", d}, {"w_is_cotangent_power", sc.w_is_cotangent_power},
                                     {"induce_restrict", sc.induce_restrict}});
                verdict("structure_orbit" + std::to_string(i) + "_d" + std::to_string(d),
                        sc.w_is_cotangent_power && sc.induce_restrict);
            }
        }
        f["wpd"] = wpd;
        f["structure"] = structure;

        if (model_.is_tame() && n_) {
            bool derived = s_.exponents.empty();
            auto exps = derived ? line_bundle_exponents(model_) : s_.exponents;
            auto tame = chi_tame_rank_r(eng_, model_, exps, *n_);
            put_class(json::json_pointer("/formulas/tame_rank_r/class"), tame);
            f["tame_rank_r"]["exponents"] = exps;
            if (derived && chi_) {
                auto t = regular_multiple(chi_->integral, tame, eng_.regular_class());
                f["tame_rank_r"]["regular_multiple"] = t ? json(*t) : json(nullptr);
                verdict("tame_congruence", t.has_value(), t ? "difference " + std::to_string(*t) + " [k[G]]" : "");
            }
        }
    }

    CommandResult finish()
    {
        auto& reg = eng_.registry();
        json simples = json::array();
        for (std::size_t i = 0; i < reg.size(); ++i)
            simples.push_back({{"index", i}, {"dim", reg.simple(i).dim()}, {"end_dim", reg.end_dim(i)}});
        report_["classes"]["simples"] = simples;
        for (const auto& [ptr, v] : pending_) {
            json arr = json::array();
            for (const auto& r : v.padded(reg.size())) arr.push_back(rational_json(r));
            report_[ptr] = arr;
        }
        report_["verdicts"]["all"] = all_pass_;
        report_["hash"] = report_hash(report_);
        line(std::string(all_pass_ ? "PASS" : "FAIL") + "  report " + report_["hash"].get<std::string>());
        return {report_, text_.str(), all_pass_ ? exit_pass : exit_verdict};
    }

    Command cmd_;
    const Scenario& s_;
    Engine eng_;
    CoverModel model_;
    json report_;
    std::ostringstream text_;
    bool all_pass_ = true;
    std::vector<std::pair<json::json_pointer, ClassVector>> pending_;
    std::optional<Rep> h0_;
    std::optional<ClassVector> oracle_, n_;
    std::optional<ChiFormula> chi_;
};

CommandResult error_result(int code, const std::string& kind, const std::string& msg)
{
    CommandResult r;
    r.exit_code = code;
    r.report = {{"error", {{"kind", kind}, {"message", msg}}}};
    r.summary = kind + ": " + msg + "\n";
    return r;
}

} // namespace

Command parse_command(const std::string& s)
{
    if (s == "analyze") return Command::analyze;
    if (s == "euler") return Command::euler;
    if (s == "check") return Command::check;
    throw input_error("unknown command '" + s + "'");
}

std::string to_string(Command c)
{
    switch (c) {
    case Command::analyze: return "analyze";
    case Command::euler: return "euler";
    case Command::check: return "check";
    }
    return "?";
}

std::string report_hash(const json& report)
{
    json copy = report;
    if (copy.is_object()) copy.erase("hash");
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : copy.dump()) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

CommandResult run_command(Command c, const Scenario& s)
{
    return ReportBuilder(c, s).run();
}

CommandResult run_guarded(Command c, const std::string& scenario_path, std::optional<std::uint64_t> seed,
                          std::optional<Mode> mode)
{
    try {
        Scenario s = load_scenario(scenario_path);
        if (seed) s.seed = *seed;
        if (mode) {
            if (*mode == Mode::oracle && !s.group->is_pgl2()) throw input_error("oracle mode needs a PGL_2 group");
            s.mode = *mode;
        }
        return run_command(c, s);
    } catch (const input_error& e) {
        return error_result(exit_input, "input error", e.what());
    } catch (const cap_exceeded& e) {
        return error_result(exit_internal, "cap exceeded", e.what());
    } catch (const internal_error& e) {
        return error_result(exit_internal, "internal error", e.what());
    } catch (const std::exception& e) {
        return error_result(exit_internal, "internal error", e.what());
    }
}

CommandResult run_suite(const std::string& suite_path, bool update)
{
    json suite;
    {
        std::ifstream in(suite_path);
        if (!in) return error_result(exit_input, "input error", "cannot read suite file " + suite_path);
        try {
            in >> suite;
        } catch (const json::exception& e) {
            return error_result(exit_input, "input error", std::string("suite file: ") + e.what());
        }
    }
    if (!suite.contains("scenarios") || !suite.at("scenarios").is_array())
        return error_result(exit_input, "input error", "suite file needs a 'scenarios' array");
    const auto dir = std::filesystem::path(suite_path).parent_path();
    CommandResult out;
    out.report = {{"suite", json::array()}};
    bool ok = true;
    for (auto& entry : suite["scenarios"]) {
        if (!entry.contains("file") || !entry.contains("command"))
            return error_result(exit_input, "input error", "suite entries need 'file' and 'command'");
        const std::string file = entry["file"].get<std::string>();
        Command c;
        try {
            c = parse_command(entry["command"].get<std::string>());
        } catch (const input_error& e) {
            return error_result(exit_input, "input error", e.what());
        }
        auto r = run_guarded(c, (dir / file).string(), std::nullopt, std::nullopt);
        json got_hash = r.report.contains("hash") ? r.report["hash"] : json(nullptr);
        if (update) {
            entry["hash"] = got_hash;
            entry["exit"] = r.exit_code;
        }
        const bool match = entry.value("hash", json(nullptr)) == got_hash && entry.value("exit", 0) == r.exit_code;
        ok = ok && match;
        out.report["suite"].push_back({{"file", file},
                                       {"command", to_string(c)},
                                       {"hash", got_hash},
                                       {"exit", r.exit_code},
                                       {"match", match}});
        out.summary += std::string(match ? "ok    " : "DIFF  ") + to_string(c) + " " + file + "  exit " +
                       std::to_string(r.exit_code) + "  " + (got_hash.is_null() ? "-" : got_hash.get<std::string>()) +
                       "\n";
    }
    if (update) {
        std::ofstream o(suite_path);
        o << suite.dump(2) << '\n';
    }
    out.exit_code = ok ? exit_pass : exit_verdict;
    out.summary += ok ? "suite PASS\n" : "suite FAIL\n";
    return out;
}

} // namespace equirr
