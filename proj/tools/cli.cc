// Copyright 2026 The Telecloning Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "telecloning/entanglement.h"
#include "telecloning/heisenberg_qcm.h"
#include "telecloning/mixed.h"
#include "telecloning/parallel.h"
#include "telecloning/protocol.h"
#include "telecloning/sampling.h"
#include "verify.h"

namespace telecloning::cli {
namespace {

/// A command detected a violated invariant; maps to kExitInvariantFailure.
struct InvariantFailure {};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_real(std::string_view s, const std::string &context) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw UsageError("malformed number '" + context + "'");
    }
    return value;
}

Complex parse_complex(std::string_view token) {
    std::string context(token);
    token = trim(token);
    if (token.empty()) {
        throw UsageError("empty amplitude");
    }
    char last = token.back();
    if (last != 'i' && last != 'j') {
        return {parse_real(token, context), 0.0};
    }
    token.remove_suffix(1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = token.size(); k-- > 1;) {
        if ((token[k] == '+' || token[k] == '-') && token[k - 1] != 'e' && token[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imaginary = [&](std::string_view s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_real(s, context);
    };
    if (split == std::string_view::npos) {
        return {0.0, imaginary(token)};
    }
    return {parse_real(token.substr(0, split), context), imaginary(token.substr(split))};
}

std::size_t checked_dimension(std::size_t n) {
    if (n < 1 || n > 4) {
        throw UsageError("--n must be between 1 and 4 for protocol simulation");
    }
    return std::size_t{1} << n;
}

void write_output(const std::string &path, std::ostream &fallback, const std::function<void(std::ostream &)> &emit) {
    if (path.empty()) {
        emit(fallback);
        fallback.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw UsageError("cannot open '" + path + "' for writing");
    }
    emit(file);
    file.flush();
    if (!file) {
        throw UsageError("write to '" + path + "' failed");
    }
}

void write_json(const std::string &path, std::ostream &fallback, const nlohmann::json &j) {
    write_output(path, fallback, [&](std::ostream &os) { os << j.dump(2) << '\n'; });
}

struct Common {
    std::string out;
    std::string format = "csv";
    int jobs = 0;
};

void add_common(CLI::App *cmd, Common &c, const std::string &default_format) {
    c.format = default_format;
    cmd->add_option("--out", c.out, "Output path (default: stdout)");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", c.jobs, "Worker threads (default: $TELECLONE_JOBS or 1)")->check(CLI::PositiveNumber);
}

unsigned resolve_jobs(const Common &c) {
    return c.jobs > 0 ? static_cast<unsigned>(c.jobs) : default_jobs();
}

// run

struct RunConfig {
    Common common;
    std::size_t n = 2;
    double p = 0.5;
    std::string input = "random";
    std::string outcome;
    std::uint64_t seed = 1;
};

int cmd_run(const RunConfig &cfg, std::ostream &out) {
    if (cfg.common.format != "json") {
        throw UsageError("run writes a JSON transcript; --format csv is not supported");
    }
    checked_dimension(cfg.n);
    CloneParams params(cfg.p, cfg.n);
    auto psi = parse_input(cfg.input, cfg.n, cfg.seed);
    MeasurementMode mode = SampledOutcome{cfg.seed};
    if (!cfg.outcome.empty()) {
        BellOutcome outcome;
        try {
            outcome = BellOutcome::parse(cfg.outcome);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        if (outcome.size() != cfg.n) {
            throw UsageError("--outcome needs " + std::to_string(cfg.n) + " Bell elements");
        }
        mode = ForcedOutcome{outcome};
    }
    auto transcript = telecloning::run(psi, params, mode);
    auto j = to_json(transcript, params);
    j["seed"] = cfg.seed;
    j["input"] = cfg.input;
    write_json(cfg.common.out, out, j);
    auto expected = fidelity_formula(params);
    bool ok = transcript.target_overlap >= 1 - kExactTolerance && std::abs(transcript.fidelity_b - expected.b) <= kExactTolerance &&
              std::abs(transcript.fidelity_c - expected.c) <= kExactTolerance;
    if (!ok) {
        throw InvariantFailure{};
    }
    return kExitSuccess;
}

// sweep-delta

struct SweepDeltaConfig {
    Common common;
    double mu = 0;
    double p = 0;
    bool has_mu = false;
    bool has_p = false;
    double mu_step = 0.005;
    double p_step = 0.001;
    double tolerance = 1e-9;
    std::string summary;
};

nlohmann::json rows_json(const SweepReport &report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : report.rows) {
        rows.push_back({{"mu", r.mu}, {"p", r.p}, {"F_B", r.f_b}, {"F_C", r.f_c}, {"C_B", r.c_b}, {"C_C", r.c_c}, {"delta", r.delta}});
    }
    return rows;
}

int cmd_sweep_delta(const SweepDeltaConfig &cfg, std::ostream &out, std::ostream &err) {
    SweepGrid grid;
    grid.mu_step = cfg.mu_step;
    grid.p_step = cfg.p_step;
    grid.tolerance = cfg.tolerance;
    grid.jobs = resolve_jobs(cfg.common);
    grid.keep_rows = true;
    if (cfg.has_mu) {
        grid.mu_min = grid.mu_max = cfg.mu;
    }
    if (cfg.has_p) {
        grid.p_min = grid.p_max = cfg.p;
    }
    try {
        grid.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    auto report = delta_sweep(grid);
    auto summary = sweep_summary(report, grid);
    if (cfg.common.format == "json") {
        write_json(cfg.common.out, out, {{"summary", summary}, {"rows", rows_json(report)}});
    } else {
        write_output(cfg.common.out, out, [&](std::ostream &os) { os << sweep_csv(report); });
    }
    if (cfg.common.format == "csv" || !cfg.summary.empty()) {
        write_json(cfg.summary, err, summary);
    }
    if (!report.passed(grid.tolerance)) {
        throw InvariantFailure{};
    }
    return kExitSuccess;
}

// sweep-fidelity

struct SweepFidelityConfig {
    Common common;
    std::size_t n = 2;
    double p_step = 0.01;
    std::uint64_t seed = 1;
    bool simulate = false;
    bool simulate_set = false;
};

struct FidelityRow {
    double p = 0;
    double f_b = 0;
    double f_c = 0;
    double sim_b = 0;
    double sim_c = 0;
    double overlap = 0;
};

int cmd_sweep_fidelity(const SweepFidelityConfig &cfg, std::ostream &out) {
    if (cfg.n < 1 || cfg.n > 30) {
        throw UsageError("--n must be between 1 and 30");
    }
    if (!(cfg.p_step > 0) || cfg.p_step > 1) {
        throw UsageError("--p-step must be in (0, 1]");
    }
    bool simulate = cfg.simulate_set ? cfg.simulate : cfg.n <= 3;
    if (simulate) {
        checked_dimension(cfg.n);
    }
    auto count = static_cast<std::size_t>(std::floor(1.0 / cfg.p_step + 1e-9)) + 1;
    std::vector<FidelityRow> rows(count);
    std::vector<char> ok(count, 1);
    parallel_for(count, resolve_jobs(cfg.common), [&](std::size_t i) {
        double p = std::min(1.0, static_cast<double>(i) * cfg.p_step);
        CloneParams params(p, cfg.n);
        auto f = fidelity_formula(params);
        FidelityRow row{p, f.b, f.c, 0, 0, 0};
        if (simulate) {
            Rng rng(cfg.seed + i);
            auto t = telecloning::run(random_state(cfg.n, rng), params, SampledOutcome{cfg.seed + i});
            row.sim_b = t.fidelity_b;
            row.sim_c = t.fidelity_c;
            row.overlap = t.target_overlap;
            ok[i] = std::abs(row.sim_b - f.b) <= kExactTolerance && std::abs(row.sim_c - f.c) <= kExactTolerance &&
                    row.overlap >= 1 - kExactTolerance;
        }
        double floor_value = 1.0 / static_cast<double>(params.d());
        ok[i] = ok[i] && f.b >= floor_value - kExactTolerance && f.b <= 1 + kExactTolerance && f.c >= floor_value - kExactTolerance &&
                f.c <= 1 + kExactTolerance;
        rows[i] = row;
    });
    if (cfg.common.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &r : rows) {
            nlohmann::json j = {{"p", r.p}, {"F_B", r.f_b}, {"F_C", r.f_c}};
            if (simulate) {
                j["F_B_sim"] = r.sim_b;
                j["F_C_sim"] = r.sim_c;
                j["overlap"] = r.overlap;
            }
            arr.push_back(j);
        }
        write_json(cfg.common.out, out, {{"n", cfg.n}, {"seed", cfg.seed}, {"simulated", simulate}, {"rows", arr}});
    } else {
        write_output(cfg.common.out, out, [&](std::ostream &os) {
            os << "p,F_B,F_C" << (simulate ? ",F_B_sim,F_C_sim,overlap" : "") << '\n';
            for (const auto &r : rows) {
                os << format_number(r.p) << ',' << format_number(r.f_b) << ',' << format_number(r.f_c);
                if (simulate) {
                    os << ',' << format_number(r.sim_b) << ',' << format_number(r.sim_c) << ',' << format_number(r.overlap);
                }
                os << '\n';
            }
        });
    }
    for (char good : ok) {
        if (!good) {
            throw InvariantFailure{};
        }
    }
    return kExitSuccess;
}

// mixed

struct MixedConfig {
    Common common;
    std::size_t n = 1;
    double p = 0.5;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    bool large = false;
    std::string summary;
};

int cmd_mixed(const MixedConfig &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.n < 1 || cfg.n > 15) {
        throw UsageError("--n must be between 1 and 15");
    }
    if (cfg.n > 1 && !cfg.large) {
        throw UsageError("mixed inputs with n > 1 exceed the 10-qubit register guard; pass --large");
    }
    BoundSweepOptions options;
    options.n = cfg.n;
    options.p = cfg.p;
    options.samples = cfg.samples;
    options.seed = cfg.seed;
    options.simulate = cfg.n <= 2;
    options.allow_large = cfg.large;
    options.jobs = resolve_jobs(cfg.common);
    CloneParams params(cfg.p, 2 * cfg.n);
    auto rows = bound_sweep(options);

    std::size_t violations = 0;
    double min_f = 2;
    for (const auto &r : rows) {
        violations += r.ok ? 0 : 1;
        min_f = std::min(min_f, r.f_mixed);
    }
    auto bounds = fidelity_bounds(params);
    auto pure = fidelity_formula(params);
    nlohmann::json summary = {
        {"n", cfg.n},
        {"p", cfg.p},
        {"d", params.d()},
        {"samples", cfg.samples},
        {"seed", cfg.seed},
        {"simulated", options.simulate},
        {"rows", rows.size()},
        {"violations", violations},
        {"lower_bound", bounds.lower_b},
        {"min_F_mixed", min_f},
        {"F_pure", pure.b},
        {"vertex_F", rows.front().f_mixed},
        {"uniform_F", rows[std::size_t{1} << cfg.n].f_mixed},
    };
    if (cfg.common.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &r : rows) {
            arr.push_back({{"alphas", r.alphas}, {"p", r.p}, {"F_mixed", r.f_mixed}, {"lower_bound", r.lower_bound}, {"F_pure", r.f_pure}, {"ok", r.ok}});
        }
        write_json(cfg.common.out, out, {{"summary", summary}, {"rows", arr}});
    } else {
        write_output(cfg.common.out, out, [&](std::ostream &os) { os << bound_sweep_csv(rows); });
    }
    if (cfg.common.format == "csv" || !cfg.summary.empty()) {
        write_json(cfg.summary, err, summary);
    }
    if (violations != 0) {
        throw InvariantFailure{};
    }
    return kExitSuccess;
}

// verify

struct VerifyConfig {
    Common common;
    std::vector<std::string> groups;
    bool inject_wrong_prefactor = false;
    std::uint64_t seed = 1;
};

int cmd_verify(const VerifyConfig &cfg, std::ostream &out) {
    if (cfg.common.format != "json") {
        throw UsageError("verify writes a JSON report; --format csv is not supported");
    }
    auto names = cfg.groups.empty() ? verify::group_names() : cfg.groups;
    for (const auto &name : names) {
        if (!verify::is_group(name)) {
            throw UsageError("unknown verify group '" + name + "'");
        }
    }
    verify::Options options;
    options.seed = cfg.seed;
    options.inject_wrong_prefactor = cfg.inject_wrong_prefactor;
    options.jobs = resolve_jobs(cfg.common);
    std::vector<verify::GroupResult> results;
    for (const auto &name : names) {
        results.push_back(verify::run_group(name, options));
    }
    auto report = verify::to_json(results);
    write_json(cfg.common.out, out, report);
    if (!report["passed"].get<bool>()) {
        throw InvariantFailure{};
    }
    return kExitSuccess;
}

}  // namespace

std::vector<Complex> parse_amplitudes(const std::string &text) {
    std::vector<Complex> amps;
    std::string_view rest(text);
    while (true) {
        auto comma = rest.find(',');
        amps.push_back(parse_complex(rest.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return amps;
}

StateVector parse_input(const std::string &spec, std::size_t n, std::uint64_t seed) {
    std::size_t dim = checked_dimension(n);
    const double r = 1.0 / std::sqrt(2.0);
    if (spec == "random") {
        Rng rng(seed);
        return random_state(n, rng);
    }
    if (spec == "bell") {
        if (n != 2) {
            throw UsageError("the bell preset is a two-qubit state; use --n 2");
        }
        return StateVector::from_amplitudes(std::vector<Complex>{r, 0, 0, r});
    }
    if (spec == "ghz") {
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
        v[0] = r;
        v[static_cast<Eigen::Index>(dim - 1)] = r;
        return StateVector(std::move(v));
    }
    if (spec.rfind("basis-", 0) == 0) {
        std::string_view digits = std::string_view(spec).substr(6);
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty() || k >= dim) {
            throw UsageError("basis preset '" + spec + "' needs an index below " + std::to_string(dim));
        }
        return StateVector::basis(n, k);
    }
    auto amps = parse_amplitudes(spec);
    if (amps.size() != dim) {
        throw UsageError("expected " + std::to_string(dim) + " amplitudes for --n " + std::to_string(n) + ", got " + std::to_string(amps.size()));
    }
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        v[static_cast<Eigen::Index>(i)] = amps[i];
    }
    double norm = v.squaredNorm();
    if (std::abs(norm - 1.0) > 1e-6) {
        throw UsageError("input amplitudes have squared norm " + format_number(norm) + ", expected 1 within 1e-6");
    }
    return StateVector::normalized(std::move(v));
}

unsigned default_jobs() {
    const char *env = std::getenv("TELECLONE_JOBS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    std::string_view s(env);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
        throw UsageError("TELECLONE_JOBS must be a positive integer, got '" + std::string(s) + "'");
    }
    return value;
}

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Asymmetric quantum telecloning simulator", "teleclone"};
    app.require_subcommand(1);

    RunConfig run_cfg;
    auto *run_cmd = app.add_subcommand("run", "Telecloning of one input state; writes a JSON transcript");
    add_common(run_cmd, run_cfg.common, "json");
    run_cmd->add_option("--n", run_cfg.n, "Input qubits");
    run_cmd->add_option("--p", run_cfg.p, "Cloning weight p (q = 1 - p)")->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--input", run_cfg.input, "bell, ghz, random, basis-k or a comma-separated amplitude list");
    run_cmd->add_option("--outcome", run_cfg.outcome, "Forced Bell outcome, e.g. \"PHI+,PSI-\"");
    run_cmd->add_option("--seed", run_cfg.seed, "Seed for random inputs and sampled outcomes");

    SweepDeltaConfig delta_cfg;
    auto *delta_cmd = app.add_subcommand("sweep-delta", "Entanglement difference over the (mu, p) grid");
    add_common(delta_cmd, delta_cfg.common, "csv");
    auto *mu_opt = delta_cmd->add_option("--mu", delta_cfg.mu, "Single mu value")->check(CLI::Range(0.0, 0.5));
    auto *p_opt = delta_cmd->add_option("--p", delta_cfg.p, "Single p value")->check(CLI::Range(0.0, 1.0));
    delta_cmd->add_option("--mu-step", delta_cfg.mu_step, "Grid step in mu");
    delta_cmd->add_option("--p-step", delta_cfg.p_step, "Grid step in p");
    delta_cmd->add_option("--tolerance", delta_cfg.tolerance, "Allowed negative delta");
    delta_cmd->add_option("--summary", delta_cfg.summary, "Summary JSON path (default: stderr)");

    SweepFidelityConfig fid_cfg;
    auto *fid_cmd = app.add_subcommand("sweep-fidelity", "Clone fidelities across p");
    add_common(fid_cmd, fid_cfg.common, "csv");
    fid_cmd->add_option("--n", fid_cfg.n, "Input qubits");
    fid_cmd->add_option("--p-step", fid_cfg.p_step, "Grid step in p");
    fid_cmd->add_option("--seed", fid_cfg.seed, "Seed for simulated inputs and outcomes");
    auto *sim_flag = fid_cmd->add_flag("--simulate,!--no-simulate", fid_cfg.simulate, "Also run the protocol (default for n <= 3)");

    MixedConfig mixed_cfg;
    auto *mixed_cmd = app.add_subcommand("mixed", "Fidelity bound sweep for diagonal mixed inputs");
    add_common(mixed_cmd, mixed_cfg.common, "csv");
    mixed_cmd->add_option("--n", mixed_cfg.n, "Qubits of the mixed input");
    mixed_cmd->add_option("--p", mixed_cfg.p, "Cloning weight p")->check(CLI::Range(0.0, 1.0));
    mixed_cmd->add_option("--samples", mixed_cfg.samples, "Random simplex points");
    mixed_cmd->add_option("--seed", mixed_cfg.seed, "Sampling seed");
    mixed_cmd->add_flag("--large", mixed_cfg.large, "Allow n > 1 (20-qubit simulation at n = 2, closed forms above)");
    mixed_cmd->add_option("--summary", mixed_cfg.summary, "Summary JSON path (default: stderr)");

    VerifyConfig verify_cfg;
    auto *verify_cmd = app.add_subcommand("verify", "Run invariant groups; nonzero exit on failure");
    add_common(verify_cmd, verify_cfg.common, "json");
    verify_cmd->add_option("--group", verify_cfg.groups, "Group to run (repeatable; default all)");
    verify_cmd->add_flag("--inject-wrong-prefactor", verify_cfg.inject_wrong_prefactor, "Build channel-norm channels with the 1/2^n scale");
    verify_cmd->add_option("--seed", verify_cfg.seed, "Seed for randomized checks");

    std::vector<std::string> argv_storage{"teleclone"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : argv_storage) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitSuccess;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    delta_cfg.has_mu = mu_opt->count() > 0;
    delta_cfg.has_p = p_opt->count() > 0;
    fid_cfg.simulate_set = sim_flag->count() > 0;

    try {
        if (*run_cmd) {
            return cmd_run(run_cfg, out);
        }
        if (*delta_cmd) {
            return cmd_sweep_delta(delta_cfg, out, err);
        }
        if (*fid_cmd) {
            return cmd_sweep_fidelity(fid_cfg, out);
        }
        if (*mixed_cmd) {
            return cmd_mixed(mixed_cfg, out, err);
        }
        return cmd_verify(verify_cfg, out);
    } catch (const InvariantFailure &) {
        err << "error: invariant check failed\n";
        return kExitInvariantFailure;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvariantFailure;
    }
}

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace telecloning::cli
