// Copyright 2026 The ares-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ares-sim: run, fuzz and check simulated executions.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ares/fuzz.hpp"
#include "ares/report.hpp"

using namespace ares;

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string with_seed(const std::string& path, std::uint64_t seed, bool sweep) {
    return sweep ? path + "." + std::to_string(seed) : path;
}

void print_verdicts(const CheckReport& r, std::ostream& out) {
    for (const auto& v : r.verdicts) {
        out << (v.pass ? "PASS " : "FAIL ") << v.name;
        if (!v.detail.empty()) out << ": " << v.detail;
        out << "\n";
    }
}

struct RunArgs {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::uint64_t sweep = 0;
    std::string trace_out, report_out, checks;
    bool allow_overload = false;
};

int cmd_run(const RunArgs& a) {
    auto base = load_scenario(a.scenario);
    if (a.allow_overload) base.allow_overload = true;
    std::vector<std::string> checks = a.checks.empty() ? base.checks : split_list(a.checks);
    if (checks.empty()) checks = {"safety"};
    expand_checks(checks);

    const bool sweep = a.sweep > 0;
    const std::uint64_t first = a.seed.value_or(base.sim.seed);
    const std::uint64_t runs = sweep ? a.sweep : 1;
    std::size_t passed = 0;
    for (std::uint64_t i = 0; i < runs; ++i) {
        auto s = base;
        s.sim.seed = first + i;
        auto out = run_scenario(s);
        for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
        auto ev = evaluate(s, out, checks);
        if (!a.trace_out.empty()) {
            std::ofstream f(with_seed(a.trace_out, s.sim.seed, sweep));
            write_trace(f, out.trace);
        }
        if (!a.report_out.empty()) {
            std::ofstream f(with_seed(a.report_out, s.sim.seed, sweep));
            f << report_json(s, out, ev).dump(2) << "\n";
        }
        if (!sweep || !ev.pass()) {
            std::cout << "seed " << s.sim.seed << ": " << (ev.pass() ? "pass" : "FAIL") << " ("
                      << (ev.quiescent ? "quiescent" : "budget exhausted") << ", " << out.trace.size()
                      << " events, " << out.pending_ops << " pending ops)\n";
            print_verdicts(ev.requested, std::cout);
        }
        passed += ev.pass();
    }
    if (sweep) std::cout << passed << "/" << runs << " seeds pass\n";
    return passed == runs ? 0 : 1;
}

int cmd_fuzz(const std::string& path, FuzzOptions opts, const std::string& mutation) {
    auto tmpl = load_scenario(path);
    if (!mutation.empty()) {
        opts.mutation = parse_mutation(mutation);
        if (!opts.mutation) throw Error("unknown mutation '" + mutation + "'");
    }
    auto r = fuzz(tmpl, opts);
    std::cout << r.runs << " runs, " << r.quiescent << " quiescent, " << r.small_histories
              << " cross-checked exhaustively, " << r.failures.size() << " failures\n";
    for (const auto& [name, n] : r.by_verdict) std::cout << "  " << name << ": " << n << "\n";
    for (const auto& f : r.failures) {
        std::cout << "seed " << f.seed << " fails " << f.verdict << ": " << f.detail << "\n";
        if (!opts.out_dir) std::cout << (f.minimized.empty() ? f.scenario : f.minimized);
    }
    return r.pass() ? 0 : 1;
}

int cmd_check(const std::string& path, const std::string& checks_text) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    auto trace = read_trace(in);
    bool quiescent = false;  // unknown from the trace alone
    auto all = check_all(trace, quiescent);
    auto names = expand_checks(checks_text.empty() ? std::vector<std::string>{"safety"} : split_list(checks_text));
    CheckReport req;
    for (const auto& n : names)
        if (const auto* v = all.find(n)) req.add(*v);
    print_verdicts(req, std::cout);
    return req.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and checkers for reconfigurable atomic storage"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Execute a scenario and check it");
    run_cmd->add_option("scenario", run.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
    run_cmd->add_option("--seed-sweep", run.sweep, "Run N consecutive seeds");
    run_cmd->add_option("--trace-out", run.trace_out, "Write the JSON-lines trace here");
    run_cmd->add_option("--report-out", run.report_out, "Write the JSON report here");
    run_cmd->add_flag("--allow-overload", run.allow_overload, "Run even if crashes exceed a configuration's tolerance");
    run_cmd->add_option("--check", run.checks, "Comma-separated checks (default: scenario list, else safety)");

    std::string fuzz_path, mutation;
    FuzzOptions fopts;
    std::string out_dir;
    bool keep_going = false;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Run randomized schedules drawn from a template");
    fuzz_cmd->add_option("template", fuzz_path, "Scenario with a [fuzz] section")->required()->check(CLI::ExistingFile);
    fuzz_cmd->add_option("--count", fopts.count, "Number of runs");
    fuzz_cmd->add_option("--seed", fopts.seed, "First seed");
    fuzz_cmd->add_option("--out-dir", out_dir, "Directory for failing scenarios");
    fuzz_cmd->add_option("--mutation", mutation, "Inject a protocol mutation (no-tag-compare, no-f-preference)");
    fuzz_cmd->add_flag("--keep-going", keep_going, "Continue after the first failure");

    std::string trace_path, check_list;
    auto* check_cmd = app.add_subcommand("check", "Run checkers over a recorded trace");
    check_cmd->add_option("trace", trace_path, "JSON-lines trace")->required()->check(CLI::ExistingFile);
    check_cmd->add_option("--check", check_list, "Comma-separated checks (default: safety)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) return cmd_run(run);
        if (*fuzz_cmd) {
            if (!out_dir.empty()) fopts.out_dir = out_dir;
            fopts.stop_on_failure = !keep_going;
            return cmd_fuzz(fuzz_path, fopts, mutation);
        }
        if (*check_cmd) return cmd_check(trace_path, check_list);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
