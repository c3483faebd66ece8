#pragma once

#include "equirr/scenario.hpp"

#include <string>

namespace equirr {

enum class Command { analyze, euler, check };

Command parse_command(const std::string& s);
std::string to_string(Command c);

enum exit_code : int { exit_pass = 0, exit_verdict = 1, exit_input = 2, exit_internal = 3 };

/* Report sections: scenario, ramification, classes, formulas, verdicts,
 * audit, plus "hash" (FNV-1a over the canonical dump of everything else). */
struct CommandResult {
    nlohmann::json report;
    std::string summary;
    int exit_code = exit_pass;
};

CommandResult run_command(Command c, const Scenario& s);

/* 64-bit FNV-1a of the compact dump of `report` without its "hash" key, as 16 hex digits. */
std::string report_hash(const nlohmann::json& report);

/* Runs every entry of a suite file and compares report hashes and exit
 * codes.  With update = true the suite file is rewritten with the observed
 * values instead. */
CommandResult run_suite(const std::string& suite_path, bool update);

/* Maps exceptions to exit codes; the message goes to the summary. */
CommandResult run_guarded(Command c, const std::string& scenario_path, std::optional<std::uint64_t> seed,
                          std::optional<Mode> mode);

} // namespace equirr
