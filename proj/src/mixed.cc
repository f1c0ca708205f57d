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

#include "telecloning/mixed.h"

#include <bit>
#include <cmath>
#include <numeric>

#include "telecloning/entanglement.h"
#include "telecloning/parallel.h"
#include "telecloning/sampling.h"

namespace telecloning {

namespace {

void check_dimensions(const MixedInput &input, const CloneParams &params) {
    if (params.n() != 2 * input.n()) {
        throw std::invalid_argument(
            "mixed telecloning: protocol has " + std::to_string(params.n()) + " qubits, purification needs " +
            std::to_string(2 * input.n()));
    }
}

void check_register(const MixedInput &input, bool allow_large) {
    const std::size_t total = 10 * input.n();
    if (total > kMaxQubits) {
        throw std::invalid_argument(
            "mixed telecloning: a " + std::to_string(total) + "-qubit register exceeds the dense limit");
    }
    if (input.n() > 1 && !allow_large) {
        throw std::invalid_argument(
            "mixed telecloning: n = " + std::to_string(input.n()) + " needs a " + std::to_string(total) +
            "-qubit register; enable the large mode to run it");
    }
}

MixedClones teleclone_with_channel(const MixedInput &input, const ChannelState &channel, const MeasurementMode &mode) {
    const std::size_t n = input.n();
    StateVector purified = purify(input);
    ProtocolTranscript t = run(purified, channel, mode);
    const auto &f = t.final_state;
    MixedClones out{
        reduced_density(f, qubit_range(0, n)),
        reduced_density(f, qubit_range(2 * n, n)),
        reduced_density(f, qubit_range(n, n)),
        reduced_density(f, qubit_range(3 * n, n)),
        reduced_density(f, qubit_range(0, 2 * n)),
        reduced_density(f, qubit_range(2 * n, 2 * n)),
        std::move(t),
    };
    return out;
}

}  // namespace

MixedInput::MixedInput(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.size() < 2 || !std::has_single_bit(alphas_.size())) {
        throw std::invalid_argument("MixedInput: weight count must be a power of two >= 2");
    }
    double total = 0;
    for (double a : alphas_) {
        if (!(a >= 0)) {
            throw std::invalid_argument("MixedInput: weights must be nonnegative");
        }
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("MixedInput: weights sum to " + std::to_string(total));
    }
    n_ = static_cast<std::size_t>(std::countr_zero(alphas_.size()));
}

MixedInput MixedInput::vertex(std::size_t n, std::size_t k) {
    std::vector<double> a(std::size_t{1} << n, 0.0);
    a.at(k) = 1.0;
    return MixedInput(std::move(a));
}

MixedInput MixedInput::uniform(std::size_t n) {
    std::size_t count = std::size_t{1} << n;
    return MixedInput(std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

StateVector purify(const MixedInput &input) {
    const std::size_t k = input.alphas().size();
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(k * k));
    for (std::size_t i = 0; i < k; ++i) {
        v[static_cast<Eigen::Index>(i * k + i)] = std::sqrt(input.alphas()[i]);
    }
    return StateVector(std::move(v));
}

MixedClones teleclone_mixed(const MixedInput &input, const CloneParams &params, const MeasurementMode &mode, bool allow_large) {
    check_dimensions(input, params);
    check_register(input, allow_large);
    return teleclone_with_channel(input, build_channel(params), mode);
}

DensityMatrix clone_formula_mixed(const MixedInput &input, const CloneParams &params, Side side) {
    check_dimensions(input, params);
    const CloneParams eff = side == Side::B ? params : params.swapped();
    const double d = static_cast<double>(eff.d());
    const double p = eff.p();
    const double q = eff.q();
    const double weight = 1.0 - q * q + (d - 1) * p * p;
    const double noise = std::sqrt(d) * q * q;
    const std::size_t k = input.alphas().size();
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = (weight * input.alphas()[i] + noise) / eff.normalizer();
    }
    return DensityMatrix(std::move(m), 1e-12);
}

double fidelity_mixed(const MixedInput &input, const CloneParams &params, Side side) {
    check_dimensions(input, params);
    const CloneParams eff = side == Side::B ? params : params.swapped();
    const double d = static_cast<double>(eff.d());
    const double p = eff.p();
    const double q = eff.q();
    const double weight = 1.0 - q * q + (d - 1) * p * p;
    const double noise = std::sqrt(d) * q * q;
    double sum = 0;
    for (double a : input.alphas()) {
        sum += std::sqrt(weight * a * a + noise * a);
    }
    return sum * sum / eff.normalizer();
}

FidelityBounds fidelity_bounds(const CloneParams &params) {
    auto lower = [](const CloneParams &eff) {
        const double d = static_cast<double>(eff.d());
        const double p = eff.p();
        const double q = eff.q();
        return (1.0 - q * q + (d - 1) * p * p + std::sqrt(d) * q * q) / eff.normalizer();
    };
    return {lower(params), lower(params.swapped())};
}

MonotonicityResult monotonicity_check(const MixedInput &input, const CloneParams &params, Side side, bool allow_large) {
    auto clones = teleclone_mixed(input, params, ForcedOutcome{BellOutcome::all_phi_plus(params.n())}, allow_large);
    const DensityMatrix rho = input.density();
    const DensityMatrix purified = DensityMatrix::pure(purify(input));
    if (side == Side::B) {
        return {uhlmann_fidelity(rho, clones.rho_b), uhlmann_fidelity(purified, clones.rho_bb_prime)};
    }
    return {uhlmann_fidelity(rho, clones.rho_c), uhlmann_fidelity(purified, clones.rho_cc_prime)};
}

std::vector<BoundSweepRow> bound_sweep(const BoundSweepOptions &options) {
    const std::size_t count = std::size_t{1} << options.n;
    const CloneParams params(options.p, 2 * options.n);
    std::vector<MixedInput> inputs;
    for (std::size_t k = 0; k < count; ++k) {
        inputs.push_back(MixedInput::vertex(options.n, k));
    }
    inputs.push_back(MixedInput::uniform(options.n));
    Rng rng(options.seed);
    for (std::size_t s = 0; s < options.samples; ++s) {
        auto w = random_simplex_point(count, rng);
        // Renormalize once more so the sum passes the 1e-12 check exactly.
        double total = std::accumulate(w.begin(), w.end(), 0.0);
        for (auto &x : w) {
            x /= total;
        }
        inputs.emplace_back(std::move(w));
    }

    const double lower = fidelity_bounds(params).lower_b;
    const double pure_formula = fidelity_formula(params).b;
    std::optional<ChannelState> channel;
    if (options.simulate) {
        MixedInput probe = inputs.front();
        check_register(probe, options.allow_large);
        channel = build_channel(params);
    }

    std::vector<BoundSweepRow> rows(inputs.size());
    parallel_for(inputs.size(), options.jobs, [&](std::size_t i) {
        const auto &input = inputs[i];
        BoundSweepRow row;
        row.alphas = input.alphas();
        row.p = options.p;
        row.lower_bound = lower;
        const double formula = fidelity_mixed(input, params);
        bool consistent = true;
        if (channel) {
            auto clones = teleclone_with_channel(input, *channel, ForcedOutcome{BellOutcome::all_phi_plus(params.n())});
            row.f_mixed = uhlmann_fidelity(input.density(), clones.rho_b);
            row.f_pure = clones.transcript.fidelity_b;
            consistent = std::abs(row.f_mixed - formula) <= 1e-8;
        } else {
            row.f_mixed = formula;
            row.f_pure = pure_formula;
        }
        row.ok = consistent && row.f_mixed >= lower - kExactTolerance && row.f_mixed <= 1.0 + kExactTolerance &&
                 row.f_mixed >= row.f_pure - kExactTolerance;
        rows[i] = std::move(row);
    });
    return rows;
}

std::string bound_sweep_csv(const std::vector<BoundSweepRow> &rows) {
    std::string out;
    std::size_t width = rows.empty() ? 0 : rows.front().alphas.size();
    for (std::size_t k = 0; k < width; ++k) {
        out += "alpha_" + std::to_string(k) + ",";
    }
    out += "p,F_mixed,lower_bound,F_pure,ok\n";
    for (const auto &r : rows) {
        for (double a : r.alphas) {
            out += format_number(a);
            out += ',';
        }
        for (double v : {r.p, r.f_mixed, r.lower_bound, r.f_pure}) {
            out += format_number(v);
            out += ',';
        }
        out += r.ok ? "1\n" : "0\n";
    }
    return out;
}

}  // namespace telecloning
