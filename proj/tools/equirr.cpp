#include "equirr/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace equirr;
    CLI::App app{"Equivariant Riemann-Roch checks for group actions on the projective line over finite fields"};
    app.require_subcommand(1);

    std::string path, json_out, mode_name;
    std::uint64_t seed = 0;
    bool update = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("scenario", path, "scenario file")->required();
        sub->add_option("--seed", seed, "random seed (overrides the file)");
        sub->add_option("--json", json_out, "write the JSON report here");
    };
    std::vector<std::pair<CLI::App*, Command>> runs;
    for (auto [name, c, help] : {std::tuple{"analyze", Command::analyze, "ramification table and Riemann-Hurwitz audit"},
                                 {"euler", Command::euler, "equivariant Euler characteristic by every route"},
                                 {"check", Command::check, "full property battery for one scenario"}}) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub);
        sub->add_option("--mode", mode_name, "oracle or abstract (overrides the file)")
            ->check(CLI::IsMember({"oracle", "abstract"}));
        runs.emplace_back(sub, c);
    }
    auto* suite = app.add_subcommand("suite", "run a golden suite and compare report hashes");
    add_common(suite);
    suite->add_flag("--update", update, "rewrite the expected hashes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input;
    }

    CommandResult result;
    if (suite->parsed()) {
        result = run_suite(path, update);
    } else {
        for (auto& [sub, c] : runs) {
            if (!sub->parsed()) continue;
            std::optional<std::uint64_t> s;
            if (sub->count("--seed")) s = seed;
            std::optional<Mode> m;
            if (!mode_name.empty()) m = parse_mode(mode_name);
            result = run_guarded(c, path, s, m);
        }
    }
    std::cout << result.summary;
    if (!json_out.empty()) {
        std::ofstream o(json_out);
        if (!o) {
            std::cerr << "cannot write " << json_out << '\n';
            return exit_input;
        }
        o << result.report.dump(2) << '\n';
    }
    return result.exit_code;
}
