#include "nbl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <memory>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nbl/hyperspace.hpp"
#include "nbl/reference_system.hpp"
#include "nbl/report.hpp"
#include "nbl/timeshift_apps.hpp"

namespace nbl::cli {

namespace {

// Off-diagonal and cross checks use five single-term standard deviations.
constexpr double kSigmaMultiple = 5.0;

struct RunConfig {
    std::uint64_t seed = 42;
    std::uint64_t n_bits = 0;
    std::optional<std::uint64_t> rounds;
    std::optional<std::uint64_t> steps;
    std::optional<std::uint64_t> length;
    std::uint64_t members = 5;
    std::uint64_t seeds = 20;
    double threshold = kDefaultThreshold;
    std::uint64_t max_n = kDefaultMaxBits;
    std::string out;
    std::string format = "json";

    std::uint64_t shift = 1;
    std::string set;
    std::optional<std::uint64_t> bit;
    std::optional<unsigned> value;
    std::string input;
    std::optional<std::uint64_t> range;
    std::optional<std::uint64_t> global_shift;
    bool independent = false;
};

struct Outcome {
    Json report;
    std::string csv;
    std::vector<std::string> summary;
    bool ok = true;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ReferenceSystem make_system(const RunConfig& c) {
    if (c.steps) return ReferenceSystem::from_shift_steps(c.seed, c.n_bits, *c.steps);
    return ReferenceSystem(c.seed, c.n_bits, c.rounds.value_or(0));
}

Json header(const std::string& command, const ReferenceSystem& sys) {
    return Json{{"schema", kReportSchema},
                {"command", command},
                {"seed", sys.seed()},
                {"N", sys.n_bits()},
                {"k", sys.rounds()},
                {"M", sys.shift_steps()},
                {"N_eff", sys.effective_bits()}};
}

std::vector<ReferenceId> selected_references(const ReferenceSystem& sys, const RunConfig& c) {
    if (!c.bit && !c.value) return sys.references();
    std::vector<ReferenceId> out;
    for (const auto& id : sys.references()) {
        if ((!c.bit || id.bit == *c.bit) && (!c.value || id.value == *c.value)) out.push_back(id);
    }
    if (out.empty()) throw Error("no reference matches --i/--b");
    return out;
}

Outcome run_capacity(const RunConfig& c) {
    std::uint64_t steps = 0;
    if (c.steps) {
        steps = *c.steps;
    } else if (c.rounds) {
        steps = 2 * *c.rounds * c.n_bits;
    }
    const CapacityReport r = capacity(c.n_bits, steps);
    Outcome o;
    o.report = Json{{"schema", kReportSchema}, {"command", "capacity"}};
    o.report.update(to_json(r));
    o.csv = "N,M,classical_bits,dimension_factor\n" + std::to_string(r.n_bits) + "," +
            std::to_string(r.shift_steps) + "," + r.classical_bits.str() + "," + r.dimension_factor.str() + "\n";
    o.summary.push_back("classical_bits=" + r.classical_bits.str());
    o.summary.push_back("dimension_factor=" + r.dimension_factor.str());
    return o;
}

Outcome run_ortho(const RunConfig& c) {
    const auto sys = make_system(c);
    const std::uint64_t length = c.length.value_or(1000000);
    const auto m = orthogonality_matrix(sys, length);
    bool diagonal_exact = true;
    for (std::size_t r = 0; r < m.dimension(); ++r) diagonal_exact = diagonal_exact && m.at(r, r).rho == 1.0;
    const double bound = kSigmaMultiple / std::sqrt(static_cast<double>(length));
    Outcome o;
    o.report = header("ortho", sys);
    o.report["L"] = length;
    o.report["bound"] = bound;
    o.report["matrix"] = to_json(m);
    o.csv = to_csv(m);
    o.ok = diagonal_exact && m.max_off_diagonal() <= bound;
    o.summary.push_back(std::string("diagonal_exact=") + (diagonal_exact ? "true" : "false"));
    o.summary.push_back("max_off_diagonal=" + fmt(m.max_off_diagonal()) + " bound=" + fmt(bound));
    return o;
}

Outcome run_encode_decode(const RunConfig& c) {
    RunConfig cfg = c;
    const auto first = make_system(c);
    const std::uint64_t length = c.length.value_or(default_window_length(c.members));
    Outcome o;
    o.report = header("encode-decode", first);
    o.report["m"] = c.members;
    o.report["L"] = length;
    o.report["threshold"] = c.threshold;
    o.csv = "seed,candidate,rho,member,detected\n";
    Json runs = Json::array();
    std::uint64_t mismatches = 0;
    double worst_member = 0.0;
    double worst_other = 0.0;
    for (std::uint64_t s = 0; s < c.seeds; ++s) {
        cfg.seed = c.seed + s;
        const auto sys = make_system(cfg);
        CounterRng rng(cfg.seed, 1);
        const auto strings = random_string_set(sys, c.members, rng);
        const Window signal = materialize(sys.source(), encode_set(sys, strings), 0, length);
        const auto result = decode_superposition(signal, sys, c.threshold, c.max_n);

        std::vector<BitString> missing;
        std::vector<BitString> spurious;
        std::set_difference(strings.begin(), strings.end(), result.detected.begin(), result.detected.end(),
                            std::back_inserter(missing));
        std::set_difference(result.detected.begin(), result.detected.end(), strings.begin(), strings.end(),
                            std::back_inserter(spurious));
        mismatches += missing.size() + spurious.size();

        for (const auto& cand : result.correlations) {
            const bool member = std::binary_search(strings.begin(), strings.end(), cand.candidate);
            if (member) {
                worst_member = std::max(worst_member, std::abs(cand.estimate.rho - 1.0));
            } else {
                worst_other = std::max(worst_other, std::abs(cand.estimate.rho));
            }
            if (sys.effective_bits() <= kMaxListedCorrelationBits) {
                o.csv += std::to_string(cfg.seed) + "," + cand.candidate.to_string() + "," +
                         fmt(cand.estimate.rho) + "," + (member ? "1" : "0") + "," +
                         (cand.estimate.rho > c.threshold ? "1" : "0") + "\n";
            }
        }
        Json run = decode_json(sys, c.members, result);
        Json encoded = Json::array();
        for (const auto& str : strings) encoded.push_back(str.to_string());
        run["encoded"] = std::move(encoded);
        run["mismatches"] = missing.size() + spurious.size();
        runs.push_back(std::move(run));
    }
    o.report["runs"] = std::move(runs);
    o.report["mismatches"] = mismatches;
    o.report["max_member_deviation"] = worst_member;
    o.report["max_non_member_abs_rho"] = worst_other;
    o.ok = mismatches == 0;
    o.summary.push_back("mismatches: " + std::to_string(mismatches));
    o.summary.push_back("max_member_deviation=" + fmt(worst_member));
    o.summary.push_back("max_non_member_abs_rho=" + fmt(worst_other));
    return o;
}

std::vector<BitString> parse_set(const std::string& text) {
    std::vector<BitString> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(BitString::parse(item));
    }
    return out;
}

Outcome run_holographic(const RunConfig& c) {
    const auto sys = make_system(c);
    std::vector<std::vector<BitString>> experiments;
    if (!c.set.empty()) {
        experiments.push_back(parse_set(c.set));
    } else {
        if (sys.effective_bits() > c.max_n) throw Error("capacity exceeded - raise max_n explicitly");
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << sys.effective_bits()); ++v) {
            experiments.push_back({BitString::from_integer(v, sys.effective_bits())});
        }
    }
    Outcome o;
    o.report = header("holographic", sys);
    o.report["d"] = c.shift;
    o.report["threshold"] = c.threshold;
    o.csv = "set,expected,detected,matches\n";
    Json runs = Json::array();
    std::uint64_t failures = 0;
    for (const auto& strings : experiments) {
        const std::uint64_t length = c.length.value_or(default_window_length(strings.size()));
        const auto r = holographic_demo(sys, strings, {c.shift}, length, c.threshold, c.max_n);
        if (!r.matches) ++failures;
        Json run = to_json(sys, r);
        runs.push_back(std::move(run));
        auto join = [](const std::vector<BitString>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].to_string();
            return s;
        };
        o.csv += join(strings) + "," + join(r.expected) + "," + join(r.decoded.detected) + "," +
                 (r.matches ? "1" : "0") + "\n";
    }
    o.report["runs"] = std::move(runs);
    o.report["failures"] = failures;
    o.ok = failures == 0;
    o.summary.push_back("experiments=" + std::to_string(experiments.size()));
    o.summary.push_back("failures: " + std::to_string(failures));
    return o;
}

Outcome run_noncommute(const RunConfig& c) {
    const auto sys = make_system(c);
    const std::uint64_t length = c.length.value_or(1000000);
    const BitString x_bits = c.input.empty() ? BitString::from_integer(0, sys.effective_bits())
                                             : BitString::parse(c.input);
    const Product x = encode_string(sys, x_bits);
    const double bound = kSigmaMultiple / std::sqrt(static_cast<double>(length));
    Outcome o;
    o.report = header("noncommute", sys);
    o.report["L"] = length;
    o.report["bound"] = bound;
    o.report["x_bits"] = x_bits.to_string();
    o.csv = "reference,d,canonical_equal,cross_rho,self_multiply_after_shift,self_shift_after_multiply\n";
    Json runs = Json::array();
    double worst = 0.0;
    for (const auto& id : selected_references(sys, c)) {
        const auto r = noncommute_demo(sys, x, id, {c.shift}, length);
        const bool ok = !r.canonical_equal && std::abs(r.cross.rho) <= bound &&
                        r.self_multiply_after_shift.rho == 1.0 && r.self_shift_after_multiply.rho == 1.0;
        o.ok = o.ok && ok;
        worst = std::max(worst, std::abs(r.cross.rho));
        runs.push_back(to_json(r));
        o.csv += to_string(id) + "," + std::to_string(c.shift) + "," + (r.canonical_equal ? "1" : "0") + "," +
                 fmt(r.cross.rho) + "," + fmt(r.self_multiply_after_shift.rho) + "," +
                 fmt(r.self_shift_after_multiply.rho) + "\n";
    }
    o.report["runs"] = std::move(runs);
    o.report["max_abs_cross"] = worst;
    o.summary.push_back("max_abs_cross=" + fmt(worst) + " bound=" + fmt(bound));
    o.summary.push_back(std::string("verdict=") + (o.ok ? "non-commuting" : "FAILED"));
    return o;
}

Outcome run_randshift(const RunConfig& c) {
    const auto sys = make_system(c);
    const std::uint64_t length = c.length.value_or(1000000);
    const auto assignment = c.independent ? ShiftAssignment::random(sys, c.seed, c.range)
                                          : ShiftAssignment::random_distinct(sys, c.seed, c.range);
    const double bound = kSigmaMultiple / std::sqrt(static_cast<double>(length));
    Outcome o;
    o.report = header("randshift", sys);
    o.report["L"] = length;
    o.report["bound"] = bound;
    o.report["range"] = assignment.range();
    o.report["distinct"] = !c.independent;
    Json table = Json::object();
    for (const auto& id : sys.references()) table[to_string(id)] = assignment.at(id).periods;
    o.report["assignment"] = std::move(table);
    o.csv = "reference,r,uncompensated_rho,compensated_rho,global_shift,restored_count\n";
    Json runs = Json::array();
    for (const auto& id : selected_references(sys, c)) {
        std::optional<ShiftOffset> global;
        if (c.global_shift) global = ShiftOffset{*c.global_shift};
        const auto r = random_shift_demo(sys, assignment, id, length, global);
        bool ok = r.compensated_equal && r.compensated.rho == 1.0;
        if (r.assigned.periods >= 1) ok = ok && std::abs(r.uncompensated.rho) <= bound;
        if (!c.independent && r.global_shift.periods >= 1 && r.global_shift.periods <= assignment.range()) {
            ok = ok && r.restored.size() == 1;
        }
        o.ok = o.ok && ok;
        runs.push_back(to_json(r));
        o.csv += to_string(id) + "," + std::to_string(r.assigned.periods) + "," + fmt(r.uncompensated.rho) + "," +
                 fmt(r.compensated.rho) + "," + std::to_string(r.global_shift.periods) + "," +
                 std::to_string(r.restored.size()) + "\n";
    }
    o.report["runs"] = std::move(runs);
    o.summary.push_back(std::string("verdict=") + (o.ok ? "restored-only-with-own-shift" : "FAILED"));
    return o;
}

void add_system_options(CLI::App* cmd, RunConfig& c, std::uint64_t default_n) {
    c.n_bits = default_n;
    cmd->add_option("--seed", c.seed, "Noise source seed")->capture_default_str();
    cmd->add_option("--n", c.n_bits, "Noise bits N")->capture_default_str();
    auto* k = cmd->add_option("--k", c.rounds, "Expansion rounds k");
    auto* m = cmd->add_option("--m", c.steps, "LTC shift steps M (must equal 2kN)");
    k->excludes(m);
    m->excludes(k);
}

void add_output_options(CLI::App* cmd, RunConfig& c, const std::string& default_format) {
    c.format = default_format;
    cmd->add_option("--out", c.out, "Report path (default: stdout)");
    cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Noise-based logic with time-shifted reference noises"};
    app.require_subcommand(1, 1);
    // Each subcommand gets its own config so defaults do not leak between them.
    std::vector<std::pair<CLI::App*, std::function<Outcome()>>> commands;
    std::vector<std::unique_ptr<RunConfig>> configs;
    auto make = [&](const char* name, const char* help) {
        configs.push_back(std::make_unique<RunConfig>());
        return std::pair{app.add_subcommand(name, help), configs.back().get()};
    };

    {
        auto [cmd, c] = make("capacity", "Classical bits carried by one wire");
        add_system_options(cmd, *c, 1);
        cmd->get_option("--n")->required();
        add_output_options(cmd, *c, "json");
        commands.emplace_back(cmd, [c = c] { return run_capacity(*c); });
    }
    {
        auto [cmd, c] = make("ortho", "Orthogonality matrix of the reference noises");
        add_system_options(cmd, *c, 8);
        cmd->add_option("--l", c->length, "Window length L (default 1000000)");
        add_output_options(cmd, *c, "csv");
        commands.emplace_back(cmd, [c = c] { return run_ortho(*c); });
    }
    {
        auto [cmd, c] = make("encode-decode", "Superpose random strings and decode them");
        add_system_options(cmd, *c, 10);
        cmd->add_option("--m-strings", c->members, "Strings per superposition m")->capture_default_str();
        cmd->add_option("--seeds", c->seeds, "Number of consecutive seeds starting at --seed")->capture_default_str();
        cmd->add_option("--l", c->length, "Window length L (default max(10^4, 400(m-1)))");
        cmd->add_option("--threshold", c->threshold, "Detection threshold")->capture_default_str();
        cmd->add_option("--max-n", c->max_n, "Cap on N_eff for the candidate sweep")->capture_default_str();
        add_output_options(cmd, *c, "json");
        commands.emplace_back(cmd, [c = c] { return run_encode_decode(*c); });
    }
    {
        auto [cmd, c] = make("holographic", "Decode a time-shifted superposition");
        add_system_options(cmd, *c, 4);
        cmd->add_option("--d", c->shift, "Whole-signal shift in periods")->capture_default_str();
        cmd->add_option("--set", c->set, "Comma-separated bit strings (default: every singleton)");
        cmd->add_option("--l", c->length, "Window length L (default max(10^4, 400(m-1)))");
        cmd->add_option("--threshold", c->threshold, "Detection threshold")->capture_default_str();
        cmd->add_option("--max-n", c->max_n, "Cap on N_eff for the candidate sweep")->capture_default_str();
        add_output_options(cmd, *c, "json");
        commands.emplace_back(cmd, [c = c] { return run_holographic(*c); });
    }
    {
        auto [cmd, c] = make("noncommute", "Multiply-then-shift versus shift-then-multiply");
        add_system_options(cmd, *c, 2);
        cmd->add_option("--i", c->bit, "Noise bit of the multiplying reference (default: all)");
        cmd->add_option("--b", c->value, "Bit value of the multiplying reference (default: both)")
            ->check(CLI::Range(0, 1));
        cmd->add_option("--d", c->shift, "Shift in periods")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--x", c->input, "Input product string as bits (default: all zeros)");
        cmd->add_option("--l", c->length, "Window length L (default 1000000)");
        add_output_options(cmd, *c, "json");
        commands.emplace_back(cmd, [c = c] { return run_noncommute(*c); });
    }
    {
        auto [cmd, c] = make("randshift", "Fixed random shifts per reference noise");
        add_system_options(cmd, *c, 4);
        cmd->add_option("--i", c->bit, "Noise bit (default: all)");
        cmd->add_option("--b", c->value, "Bit value (default: both)")->check(CLI::Range(0, 1));
        cmd->add_option("--range", c->range, "Shifts are drawn from [1, range] (default 2 N_eff)");
        cmd->add_option("--global-shift", c->global_shift, "Single inverse shift tried on every reference (default r(i,b))");
        cmd->add_flag("--independent", c->independent, "Draw shifts with replacement instead of all-distinct");
        cmd->add_option("--l", c->length, "Window length L (default 1000000)");
        add_output_options(cmd, *c, "json");
        commands.emplace_back(cmd, [c = c] { return run_randshift(*c); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!commands[i].first->parsed()) continue;
        const RunConfig& c = *configs[i];
        Outcome o;
        try {
            o = commands[i].second();
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        for (const auto& line : o.summary) err << line << "\n";
        const std::string body = c.format == "csv" ? o.csv : o.report.dump(2) + "\n";
        if (c.out.empty()) {
            out << body;
        } else {
            std::ofstream file(c.out, std::ios::binary);
            if (!file) {
                err << "error: cannot open " << c.out << "\n";
                return kExitUsage;
            }
            file << body;
        }
        return o.ok ? kExitOk : kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace nbl::cli
