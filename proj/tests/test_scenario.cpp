#include "equirr/commands.hpp"
#include "equirr/error.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace equirr;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("equirr_test_" + name + ".json");
    std::ofstream(p) << text;
    return p.string();
}

std::string error_of(const std::string& text)
{
    try {
        parse_scenario(text);
    } catch (const input_error& e) {
        return e.what();
    }
    return "";
}

const char* translations = R"({"group": {"kind": "pgl2", "p": 3, "generators": [[[1, 1], [0, 1]]]},
                               "divisor": [["inf", 2]]})";

} // namespace

TEST(Scenario, MinimalAndClosure)
{
    auto s = parse_scenario(R"({"group": {"kind": "pgl2", "p": 2, "generators": []}})");
    EXPECT_EQ(s.group->order(), 1u);
    EXPECT_EQ(s.seed, 0u);
    EXPECT_TRUE(s.divisor.is_zero());
    auto t = parse_scenario(translations);
    EXPECT_EQ(t.group->order(), 3u);
    EXPECT_EQ(t.divisor.coefficient(Place::infinity()), 2);
}

TEST(Scenario, Diagnostics)
{
    EXPECT_NE(error_of("{").find("not valid JSON"), std::string::npos);
    EXPECT_NE(error_of(R"({"divisor": []})").find("group"), std::string::npos);
    EXPECT_NE(error_of(R"({"group": {"kind": "pgl2", "p": 3, "generators": [[[1, 1], [1, 1]]]}})")
                  .find("group.generators[0]"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"group": {"kind": "pgl2", "p": 4, "generators": []}})").find("group"), std::string::npos);
    EXPECT_NE(error_of(R"({"group": {"kind": "pgl2", "p": 3, "generators": []}, "divisor": [[[1, 0, 1, 1], 1]]})")
                  .find("divisor[0][0]"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"group": {"kind": "pgl2", "p": 3, "generators": []}, "divisor": [[[0, 2], 1]]})")
                  .find("monic"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"field": {"p": 3}, "group": {"kind": "table", "size": 2, "table": [[0, 1], [1, 0]]}})")
                  .find("oracle mode"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"group": {"kind": "wreath"}})").find("group.kind"), std::string::npos);
}

TEST(Scenario, NonEquivariantDivisorNamesOrbit)
{
    auto msg = error_of(R"({"group": {"kind": "pgl2", "p": 3, "generators": [[[1, 1], [0, 1]]]},
                            "divisor": [[[0, 1], 1]]})");
    for (const char* place : {"x", "x + 1", "x + 2"}) EXPECT_NE(msg.find(place), std::string::npos) << msg;
    auto whole = parse_scenario(R"({"group": {"kind": "pgl2", "p": 3, "generators": [[[1, 1], [0, 1]]]},
                                    "divisor": [{"orbit_of": [0, 1], "n": 2}]})");
    EXPECT_EQ(whole.divisor.degree(), 6);
}

TEST(Scenario, AbstractPayloadValidation)
{
    const std::string head = R"({"field": {"p": 7}, "mode": "abstract",
        "group": {"kind": "table", "size": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
        "ramification": {"orbits": [{"n": 0, "decomposition": [0, 1, 2], "action": )";
    // 4 is a primitive cube root of unity mod 7, so 1 -> 4 is a character; 1 -> 3 is not
    EXPECT_NO_THROW(parse_scenario(head + R"([{"element": 0, "cotangent": 1}, {"element": 1, "cotangent": 4},
                                              {"element": 2, "cotangent": 2}]}]}})"));
    EXPECT_NE(error_of(head + R"([{"element": 0, "cotangent": 1}, {"element": 1, "cotangent": 3},
                                  {"element": 2, "cotangent": 2}]}]}})")
                  .find("semilinear"),
              std::string::npos);
    EXPECT_NE(error_of(head + R"([{"element": 0, "cotangent": 1}]}]}})").find("one entry per"), std::string::npos);

    const std::string wild = R"({"field": {"p": 3}, "mode": "abstract",
        "group": {"kind": "table", "size": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
        "ramification": {"orbits": [{"n": 2, "decomposition": [0, 1, 2], )";
    const std::string action = R"("action": [{"element": 0, "cotangent": 1}, {"element": 1, "cotangent": 1},
                                             {"element": 2, "cotangent": 1}]}]}})";
    EXPECT_NE(error_of(wild + action).find("Sylow"), std::string::npos);
    EXPECT_NO_THROW(parse_scenario(wild + R"("wild": [0, 1, 2], )" + action));
}

TEST(Scenario, AbstractPayloadMatchesConcreteModel)
{
    // x -> 2x over GF(7): sigma^{-1} sends x to x / c, so the cotangent unit is
    // 1/c at 0 and c at infinity
    auto base = parse_scenario(R"({"group": {"kind": "pgl2", "p": 7, "generators": [[[2, 0], [0, 1]]]}})");
    const auto& g = base.group;
    const Field& f = base.field;
    json at_zero = json::array(), at_inf = json::array();
    json all = json::array();
    for (std::size_t i = 0; i < g->order(); ++i) {
        elem_t c = f.div(g->mobius(i).a, g->mobius(i).d);
        at_zero.push_back({{"element", i}, {"cotangent", f.coefficients(f.inv(c)).front()}});
        at_inf.push_back({{"element", i}, {"cotangent", f.coefficients(c).front()}});
        all.push_back(i);
    }
    json j = {{"group", {{"kind", "pgl2"}, {"p", 7}, {"generators", json::array({json::array({{2, 0}, {0, 1}})})}}},
              {"divisor", json::array({json::array({"inf", 4}), json::array({json::array({0, 1}), 1})})},
              {"ramification",
               {{"orbits", json::array({{{"n", 4}, {"decomposition", all}, {"action", at_inf}},
                                        {{"n", 1}, {"decomposition", all}, {"action", at_zero}}})}}}};
    auto s = parse_scenario(j.dump());
    auto concrete = s.model();
    s.mode = Mode::abstract;
    auto abstract = s.model();
    Engine eng(s.group, s.field, 0);
    auto n1 = n_module_via_sum(eng, concrete);
    auto n2 = n_module_via_sum(eng, abstract);
    EXPECT_EQ(n1, n2);
    EXPECT_EQ(chi_formula(eng, concrete, n1).integral, chi_formula(eng, abstract, n2).integral);
    EXPECT_EQ(chi_times_n(eng, concrete).rhs, chi_times_n(eng, abstract).rhs);
}

TEST(Scenario, CommandExitCodes)
{
    auto ok = run_guarded(Command::euler, write_temp("d2", translations), std::nullopt, std::nullopt);
    EXPECT_EQ(ok.exit_code, exit_pass) << ok.summary;
    EXPECT_TRUE(ok.report["verdicts"]["oracle_equals_integral"].get<bool>());
    EXPECT_EQ(ok.report["hash"], report_hash(ok.report));

    auto again = run_guarded(Command::euler, write_temp("d2", translations), std::nullopt, std::nullopt);
    EXPECT_EQ(again.report.dump(), ok.report.dump());

    auto refused = run_guarded(Command::euler,
                               write_temp("d1", R"({"group": {"kind": "pgl2", "p": 3, "generators": [[[1, 1], [0, 1]]]},
                                                    "divisor": [["inf", 1]]})"),
                               std::nullopt, std::nullopt);
    EXPECT_EQ(refused.exit_code, exit_pass);
    EXPECT_TRUE(refused.report["formulas"].contains("integral_refused"));
    EXPECT_TRUE(refused.report["verdicts"]["chi_times_n_identity"].get<bool>());

    auto trivial = run_guarded(Command::euler,
                               write_temp("triv", R"({"group": {"kind": "pgl2", "p": 3, "generators": []},
                                                      "divisor": [[[0, 1], 5]]})"),
                               std::nullopt, std::nullopt);
    EXPECT_EQ(trivial.exit_code, exit_pass);
    EXPECT_EQ(trivial.report["classes"]["oracle"], json::array({6}));

    auto below = run_guarded(Command::check,
                             write_temp("below", R"({"group": {"kind": "pgl2", "p": 5, "generators": [[[1, 1], [0, 1]]]},
                                                     "divisor": [["inf", 3]]})"),
                             std::nullopt, std::nullopt);
    EXPECT_EQ(below.exit_code, exit_pass);
    EXPECT_FALSE(below.report["formulas"]["projectivity"]["h0_projective"].get<bool>());
    EXPECT_NE(below.summary.find("H^0 projective: false"), std::string::npos);

    auto empty = run_guarded(Command::analyze, write_temp("empty", R"({"group": {"kind": "pgl2", "p": 2, "generators": []}})"),
                             std::nullopt, std::nullopt);
    EXPECT_EQ(empty.exit_code, exit_pass);
    EXPECT_TRUE(empty.report["ramification"].empty());
    EXPECT_EQ(empty.report["audit"]["different_degree"], 0);

    EXPECT_EQ(run_guarded(Command::euler, write_temp("bad", "{"), std::nullopt, std::nullopt).exit_code, exit_input);
    EXPECT_EQ(run_guarded(Command::euler, "/nonexistent/file.json", std::nullopt, std::nullopt).exit_code, exit_input);
    EXPECT_EQ(run_guarded(Command::analyze, write_temp("s3gf3", R"({"group": {"kind": "s3-search", "p": 3}})"),
                          std::nullopt, std::nullopt)
                  .exit_code,
              exit_input);
    EXPECT_EQ(run_guarded(Command::euler,
                          write_temp("huge", R"({"group": {"kind": "pgl2", "p": 3, "generators": []},
                                                 "divisor": [["inf", -3]]})"),
                          std::nullopt, std::nullopt)
                  .exit_code,
              exit_input);
}

TEST(Scenario, ModeOverride)
{
    auto path = write_temp("mode", translations);
    auto r = run_guarded(Command::euler, path, 5, Mode::abstract);
    EXPECT_EQ(r.exit_code, exit_pass) << r.summary;
    EXPECT_EQ(r.report["scenario"]["mode"], "abstract");
    EXPECT_EQ(r.report["scenario"]["seed"], 5);
    EXPECT_FALSE(r.report["classes"].contains("oracle"));
    EXPECT_TRUE(r.report["verdicts"]["chi_times_n_matches_integral"].get<bool>());
}
