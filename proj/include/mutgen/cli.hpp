#ifndef MUTGEN_CLI_HPP
#define MUTGEN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mutgen {

struct Invocation {
    std::string subcommand;
    /// super only: tf-check, common-branch, find-pair or avoid-meager.
    std::string action;

    std::string task, codes, code, tree, out, report;
    std::string oracle, d, r_file, f, word;
    std::optional<std::uint64_t> rounds, levels, r_seed, m, depth, width, length, window, threshold, seed;
    bool verify = false;
};

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct RunReport {
    std::string subcommand;
    std::string inputs_digest;
    std::vector<Check> verdicts;
    nlohmann::json result = nlohmann::json::object();

    bool pass() const;
};

struct RunOutcome {
    RunReport report;
    int exit_code = 0;
};

/// Arguments without the program name. Throws UsageError.
Invocation parse_invocation(const std::vector<std::string>& args);

/// Runs the invocation, writing --out artifacts. Module errors propagate.
RunOutcome execute(const Invocation& inv);

nlohmann::json to_json(const RunReport& r);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ULL);

/// Full front end: parse, execute, write the report (to --report or out),
/// map errors to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mutgen

#endif
