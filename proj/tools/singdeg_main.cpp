/*
   Copyright 2026 The singdeg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end: analyze, degrees, verify.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "singdeg/report/report.hpp"

using namespace singdeg;

namespace {

constexpr int kParseError = 1;

struct CommonFlags {
    std::string path;
    int max_n = 0;
    std::string mode = "modp";
    std::uint64_t seed = 1;
    std::size_t max_pattern_length = 24;
    std::vector<std::string> orbit_seeds;
    double tolerance = 0.02;
    bool no_oracle = false;
    bool corrupt = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("mapping", f.path, "mapping file")->required();
    cmd->add_option("--max-n", f.max_n, "largest n (0: chosen from the full-method degrees)");
    cmd->add_option("--mode", f.mode, "oracle arithmetic")->check(CLI::IsMember({"exact", "modp"}));
    cmd->add_option("--seed", f.seed, "seed for primes and generic points");
    cmd->add_option("--max-pattern-length", f.max_pattern_length, "entries traced before giving up on confinement");
    cmd->add_option("--orbit-seeds", f.orbit_seeds, "extra values whose orbits are traced")->delimiter(',');
    cmd->add_option("--tolerance", f.tolerance, "allowed |express lambda - oracle estimate|");
    cmd->add_flag("--no-oracle", f.no_oracle, "skip the degree oracle");
    // Negative-control hook for tests: doubles the weight of the first family's seed entry.
    cmd->add_flag("--test-corrupt-pattern", f.corrupt)->group("");
}

ReportOptions report_options(const CommonFlags& f) {
    ReportOptions o;
    o.max_n = f.max_n;
    o.mode = *parse_oracle_mode(f.mode);
    o.seed = f.seed;
    o.max_pattern_length = f.max_pattern_length;
    o.orbit_seeds = f.orbit_seeds;
    o.tolerance = f.tolerance;
    o.oracle = !f.no_oracle;
    if (f.corrupt)
        o.halburd.pattern_hook = [](SingularityAnalysis& a) {
            if (a.families.empty()) return;
            auto& e = a.families[0].entries.front();
            if (e.order > 0)
                e.order *= 2;
            else
                e.multiplicity = 2;
        };
    return o;
}

int run(int argc, char** argv) {
    CLI::App app{"Dynamical degree of second-order rational mappings from their singularity patterns"};
    app.require_subcommand(1);

    CommonFlags analyze_flags, verify_flags;
    std::string json_path;
    auto* analyze = app.add_subcommand("analyze", "singularity patterns, balance, characteristic polynomial and degree");
    add_common(analyze, analyze_flags);
    analyze->add_option("--json", json_path, "write the JSON report here ('-' for stdout; default <name>-report.json)");

    auto* verify = app.add_subcommand("verify", "cross-check the full method, the express method and the oracle");
    add_common(verify, verify_flags);

    std::string degrees_path, degrees_mode = "modp";
    int degrees_n = 10;
    std::uint64_t degrees_seed = 1;
    auto* degrees = app.add_subcommand("degrees", "degree sequence from the oracle as CSV");
    degrees->add_option("mapping", degrees_path, "mapping file")->required();
    degrees->add_option("--max-n", degrees_n, "largest n")->check(CLI::PositiveNumber);
    degrees->add_option("--mode", degrees_mode, "oracle arithmetic")->check(CLI::IsMember({"exact", "modp"}));
    degrees->add_option("--seed", degrees_seed, "seed for primes and generic points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kParseError;
    }

    try {
        if (degrees->parsed()) {
            const auto spec = load_mapping(degrees_path);
            OracleConfig cfg;
            cfg.seed = degrees_seed;
            const auto seq = degree_sequence(spec, degrees_n, *parse_oracle_mode(degrees_mode), cfg);
            std::cout << to_csv(seq);
            if (seq.truncated) std::cout << "truncated," << seq.truncation_reason << ",,\n";
            return 0;
        }
        const bool is_verify = verify->parsed();
        const CommonFlags& f = is_verify ? verify_flags : analyze_flags;
        const auto spec = load_mapping(f.path);
        const auto rep = build_report(spec, report_options(f));
        if (is_verify) {
            std::cout << check_table(rep.checks);
            if (rep.json.contains("error")) std::cout << "error: " << rep.json["error"]["message"].get<std::string>() << '\n';
            return rep.exit_code;
        }
        const std::string out = rep.json.dump(2) + "\n";
        if (json_path == "-") {
            std::cerr << rep.summary;
            std::cout << out;
        } else {
            const std::string p = json_path.empty() ? spec.name + "-report.json" : json_path;
            std::ofstream os(p);
            if (!os) throw std::runtime_error("cannot write " + p);
            os << out;
            std::cout << rep.summary << "report written to " << p << '\n';
        }
        return rep.exit_code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const MappingError& e) {
        std::cerr << "mapping error: " << e.what() << '\n';
        return kParseError;
    } catch (const UnresolvedPattern& e) {
        std::cerr << "unresolved pattern: " << e.what() << '\n';
        return 2;
    } catch (const HalburdError& e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
