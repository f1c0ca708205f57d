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

#include "verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "telecloning/entanglement.h"
#include "telecloning/heisenberg_qcm.h"
#include "telecloning/mixed.h"
#include "telecloning/protocol.h"
#include "telecloning/sampling.h"

namespace telecloning::verify {
namespace {

class Tally {
   public:
    explicit Tally(std::string name) { result_.name = std::move(name); }

    /// Records |error| against `tolerance`.
    void check(double error, double tolerance, const std::string &what) {
        error = std::abs(error);
        ++result_.checks;
        result_.max_error = std::max(result_.max_error, error);
        if (!(error <= tolerance)) {
            fail(what);
        }
    }

    void require(bool ok, const std::string &what) {
        ++result_.checks;
        if (!ok) {
            fail(what);
        }
    }

    GroupResult finish() {
        result_.passed = result_.failures == 0;
        return result_;
    }

   private:
    void fail(const std::string &what) {
        if (result_.failures++ == 0) {
            result_.message = what;
        }
    }

    GroupResult result_;
};

GroupResult channel_norm(const Options &options) {
    Tally t("channel-norm");
    auto prefactor = options.inject_wrong_prefactor ? ChannelPrefactor::PowerOfTwo : ChannelPrefactor::Normalized;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (double p : {0.0, 0.3, 0.5, 1.0}) {
            auto channel = build_channel(CloneParams(p, n), prefactor);
            std::string tag = "n=" + std::to_string(n) + " p=" + format_number(p);
            double norm_error = channel.state.norm_squared() - 1.0;
            t.check(norm_error, kExactTolerance, "channel norm " + tag);
            if (std::abs(norm_error) > kExactTolerance) {
                continue;
            }
            double s = von_neumann_entropy(reduced_density(channel.state, qubit_range(0, n)));
            t.check(s - static_cast<double>(n), kEigenTolerance, "channel entropy " + tag);
        }
    }
    return t.finish();
}

GroupResult eta_basis(const Options &) {
    Tally t("eta-basis");
    for (std::size_t n = 1; n <= 3; ++n) {
        CloneParams params(0.3, n);
        std::vector<StateVector> etas;
        for (std::size_t j = 0; j < params.d(); ++j) {
            etas.push_back(eta_state(j, params));
        }
        for (std::size_t j = 0; j < etas.size(); ++j) {
            for (std::size_t k = 0; k < etas.size(); ++k) {
                double expected = j == k ? 1.0 : 0.0;
                t.check(std::abs(etas[j].inner(etas[k])) - expected, kExactTolerance, "eta inner products");
            }
        }
    }
    return t.finish();
}

GroupResult transformations(const Options &) {
    Tally t("transformations");
    for (std::size_t n = 1; n <= 3; ++n) {
        for (double p : {0.0, 0.3, 0.5}) {
            CloneParams params(p, n);
            for (std::size_t j = 0; j < params.d(); ++j) {
                auto eta = eta_state(j, params);
                for (std::size_t bit = 0; bit < n; ++bit) {
                    std::size_t mask = std::size_t{1} << (n - 1 - bit);
                    auto flipped = apply_triple(eta, Pauli::X, bit, params);
                    t.check(flipped.overlap(eta_state(j ^ mask, params)) - 1.0, kExactTolerance, "state transformation");
                    auto signed_eta = apply_triple(eta, Pauli::Z, bit, params);
                    double sign = (j & mask) ? -1.0 : 1.0;
                    t.check((signed_eta.inner(eta) - sign).real(), kExactTolerance, "parity transformation");
                }
            }
        }
    }
    return t.finish();
}

GroupResult protocol(const Options &options) {
    Tally t("protocol");
    Rng rng(options.seed);
    for (std::size_t n : {1u, 2u, 3u}) {
        CloneParams params(n == 2 ? 0.3 : 0.5, n);
        auto channel = build_channel(params);
        auto expected = fidelity_formula(params);
        for (int trial = 0; trial < 3; ++trial) {
            auto psi = random_state(n, rng);
            for (const auto &o : BellOutcome::enumerate(n)) {
                auto tr = run(psi, channel, ForcedOutcome{o});
                t.check(1.0 - tr.target_overlap, kExactTolerance, "target overlap " + o.to_string());
                t.check(tr.fidelity_b - expected.b, kExactTolerance, "fidelity B " + o.to_string());
                t.check(tr.fidelity_c - expected.c, kExactTolerance, "fidelity C " + o.to_string());
                t.check(tr.probability - std::pow(4.0, -static_cast<double>(n)), kExactTolerance, "outcome probability");
            }
        }
    }
    return t.finish();
}

GroupResult entanglement_cost(const Options &) {
    Tally t("entanglement-cost");
    for (double p : {0.0, 0.3, 0.5, 1.0}) {
        CloneParams params(p, 2);
        for (const auto &o : BellOutcome::enumerate(2)) {
            double s = entanglement_cost_check(params, ForcedOutcome{o});
            t.check(s - 2.0, kEigenTolerance, "reference entropy " + o.to_string());
        }
    }
    return t.finish();
}

GroupResult concurrence(const Options &options) {
    Tally t("concurrence");
    Rng rng(options.seed + 1);
    for (int trial = 0; trial < 50; ++trial) {
        auto psi = random_state(2, rng);
        double p = rng.uniform();
        auto omega = target_state(psi, CloneParams(p, 2));
        auto formula = clone_concurrences(mu(TwoQubitInput(psi)), p);
        t.check(wootters_concurrence(reduced_density(omega, qubit_range(0, 2))) - formula.b, kExactTolerance, "C_B");
        t.check(wootters_concurrence(reduced_density(omega, qubit_range(2, 2))) - formula.c, kExactTolerance, "C_C");
    }
    t.check(formation_entropy(clone_concurrences(0.5, 0.5).b) - 0.250225, 1e-5, "symmetric clone entanglement");
    return t.finish();
}

GroupResult delta_sweep_group(const Options &options) {
    Tally t("delta-sweep");
    SweepGrid grid;
    grid.jobs = options.jobs;
    auto report = delta_sweep(grid);
    t.require(report.min_delta >= -grid.tolerance, "delta below zero");
    t.require(report.monotone_violations(grid.tolerance) == 0, "entropy sum not monotone");
    t.require(report.inflection_violations() == 0, "inflection point at or below 0.56");
    t.require(report.boundary_violations() == 0, "delta minimum not at region boundary");
    t.require(report.sign_violations() == 0, "region edges disagree with concurrence signs");
    return t.finish();
}

GroupResult mixed(const Options &options) {
    Tally t("mixed");
    Rng rng(options.seed + 2);
    CloneParams params(0.5, 2);
    for (int trial = 0; trial < 20; ++trial) {
        MixedInput input(random_simplex_point(2, rng));
        for (Side side : {Side::B, Side::C}) {
            auto clone = clone_formula_mixed(input, params, side);
            t.check(uhlmann_fidelity(input.density(), clone) - fidelity_mixed(input, params, side), 1e-8, "closed-form fidelity");
        }
        if (trial < 5) {
            auto clones = teleclone_mixed(input, params, SampledOutcome{options.seed + static_cast<std::uint64_t>(trial)});
            t.check(clones.rho_b.max_abs_diff(clone_formula_mixed(input, params, Side::B)), 1e-8, "simulated clone B");
            auto mono = monotonicity_check(input, params);
            t.require(mono.holds(), "F_mixed below F_pure");
        }
    }
    BoundSweepOptions sweep;
    sweep.samples = 200;
    sweep.seed = options.seed;
    sweep.jobs = options.jobs;
    for (const auto &row : bound_sweep(sweep)) {
        t.require(row.ok, "bound containment");
    }
    t.check(fidelity_mixed(MixedInput::vertex(1, 0), params) - 0.8, kExactTolerance, "vertex value");
    t.check(fidelity_mixed(MixedInput::uniform(1), params) - 1.0, kExactTolerance, "uniform value");
    return t.finish();
}

using GroupFn = std::function<GroupResult(const Options &)>;

const std::vector<std::pair<std::string, GroupFn>> &registry() {
    static const std::vector<std::pair<std::string, GroupFn>> groups = {
        {"channel-norm", channel_norm},
        {"eta-basis", eta_basis},
        {"transformations", transformations},
        {"protocol", protocol},
        {"entanglement-cost", entanglement_cost},
        {"concurrence", concurrence},
        {"delta-sweep", delta_sweep_group},
        {"mixed", mixed},
    };
    return groups;
}

}  // namespace

const std::vector<std::string> &group_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[name, fn] : registry()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

bool is_group(const std::string &name) {
    const auto &names = group_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

GroupResult run_group(const std::string &name, const Options &options) {
    for (const auto &[group, fn] : registry()) {
        if (group == name) {
            try {
                return fn(options);
            } catch (const std::exception &e) {
                GroupResult failed;
                failed.name = name;
                failed.failures = 1;
                failed.message = std::string("exception: ") + e.what();
                return failed;
            }
        }
    }
    throw std::invalid_argument("unknown verify group '" + name + "'");
}

nlohmann::json to_json(const std::vector<GroupResult> &results) {
    nlohmann::json groups = nlohmann::json::array();
    bool all = true;
    for (const auto &r : results) {
        all = all && r.passed;
        groups.push_back({
            {"name", r.name},
            {"passed", r.passed},
            {"checks", r.checks},
            {"failures", r.failures},
            {"max_error", r.max_error},
            {"message", r.message},
        });
    }
    return {{"passed", all}, {"groups", groups}};
}

}  // namespace telecloning::verify
