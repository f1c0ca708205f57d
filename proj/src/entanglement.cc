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

#include "telecloning/entanglement.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "telecloning/parallel.h"

namespace telecloning {

namespace {

constexpr double kMuRegionLow = 1.0 / 6.0;
constexpr double kMuRegionHigh = 0.5;
// Central-difference steps for the first and second derivatives.
constexpr double kFirstDerivativeStep = 1e-5;
constexpr double kSecondDerivativeStep = 1e-4;
constexpr double kInflectionScanEnd = 2.0 / 3.0;

std::vector<double> grid_points(double lo, double hi, double step) {
    auto count = static_cast<std::size_t>(std::llround((hi - lo) / step));
    std::vector<double> out;
    out.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        out.push_back(i == count ? hi : lo + static_cast<double>(i) * step);
    }
    return out;
}

double entropy_bits(double x) {
    return x > 0 ? -x * std::log2(x) : 0.0;
}

double clone_b_entropy(double mu_value, double p) {
    return formation_entropy(clone_concurrences(mu_value, p).b);
}

double clone_entropy_sum(double mu_value, double p) {
    auto c = clone_concurrences(mu_value, p);
    return formation_entropy(c.b) + formation_entropy(c.c);
}

RegionCheck check_region(double mu_value, std::span<const double> ps, double p_step, double tolerance) {
    RegionCheck rc;
    rc.mu = mu_value;
    rc.region = physical_region(mu_value);

    // Monotonicity of H(C_B) + H(C_C) on [1/2, p_hi].
    rc.min_sum_step = std::numeric_limits<double>::infinity();
    rc.min_sum_derivative = std::numeric_limits<double>::infinity();
    const double h1 = kFirstDerivativeStep;
    double previous = clone_entropy_sum(mu_value, 0.5);
    for (double p = 0.5; p <= rc.region.p_hi; p += p_step) {
        double value = clone_entropy_sum(mu_value, p);
        if (p > 0.5) {
            rc.min_sum_step = std::min(rc.min_sum_step, value - previous);
        }
        previous = value;
        double derivative = (clone_entropy_sum(mu_value, p + h1) - clone_entropy_sum(mu_value, p - h1)) / (2 * h1);
        rc.min_sum_derivative = std::min(rc.min_sum_derivative, derivative);
    }
    if (!std::isfinite(rc.min_sum_step)) {
        rc.min_sum_step = 0;
    }

    // Inflection point of H(C_B(p)): first sign change of the second derivative.
    const double h2 = kSecondDerivativeStep;
    auto second = [&](double p) {
        return (clone_b_entropy(mu_value, p + h2) - 2 * clone_b_entropy(mu_value, p) + clone_b_entropy(mu_value, p - h2)) /
               (h2 * h2);
    };
    double prev_p = rc.region.p_lo + 2 * h2;
    double prev_d2 = second(prev_p);
    for (double p = prev_p + p_step; p <= kInflectionScanEnd + 1e-12; p += p_step) {
        double d2 = second(p);
        if (d2 <= 0) {
            rc.inflection = prev_d2 > 0 ? prev_p + (p - prev_p) * prev_d2 / (prev_d2 - d2) : p;
            break;
        }
        prev_p = p;
        prev_d2 = d2;
    }

    // Delta restricted to the interior of the region, and the sign pattern of
    // the concurrences on the whole p grid.
    std::vector<double> inside;
    for (double p : ps) {
        auto c = clone_concurrences(mu_value, p);
        bool both = c.b > 0 && c.c > 0;
        bool near_edge = std::abs(p - rc.region.p_lo) < 1e-12 || std::abs(p - rc.region.p_hi) < 1e-12;
        if (!near_edge && both != rc.region.contains(p)) {
            ++rc.sign_mismatches;
        }
        if (rc.region.contains(p)) {
            inside.push_back(delta(mu_value, p));
        }
    }
    if (!inside.empty()) {
        double lowest = *std::min_element(inside.begin(), inside.end());
        double ends = std::min(inside.front(), inside.back());
        rc.boundary_minimum = ends <= lowest + tolerance;
    }
    return rc;
}

}  // namespace

TwoQubitInput::TwoQubitInput(std::array<Complex, 4> alphas) : alphas_(alphas) {
    double norm = 0;
    for (auto a : alphas_) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument("TwoQubitInput: amplitudes are not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
}

TwoQubitInput::TwoQubitInput(const StateVector &state)
    : TwoQubitInput([&] {
          if (state.num_qubits() != 2) {
              throw std::invalid_argument("TwoQubitInput: state is not two qubits");
          }
          return std::array<Complex, 4>{state[0], state[1], state[2], state[3]};
      }()) {
}

StateVector TwoQubitInput::state() const {
    return StateVector::from_amplitudes(alphas_);
}

double mu(const TwoQubitInput &input) {
    const auto &a = input.alphas();
    return std::abs(a[0] * a[3] - a[1] * a[2]);
}

double formation_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12 || std::isnan(x)) {
        throw std::domain_error("formation_entropy: argument " + std::to_string(x) + " outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    double root = std::sqrt(1.0 - x * x);
    double upper = 0.5 + 0.5 * root;
    // 1 - upper in a cancellation-free form for small x; log(upper) via log1p.
    double lower = 0.5 * x * x / (1.0 + root);
    double upper_term = -upper * std::log1p(-lower) / std::numbers::ln2;
    return upper_term + entropy_bits(lower);
}

double input_entanglement(const TwoQubitInput &input) {
    return formation_entropy(std::min(2.0 * mu(input), 1.0));
}

double concurrence_formula(double mu_value, double fidelity) {
    double c = (8.0 / 3.0 * fidelity - 2.0 / 3.0) * mu_value - 2.0 / 3.0 * (1.0 - fidelity);
    return std::max(0.0, c);
}

CloneConcurrences clone_concurrences(double mu_value, double p) {
    auto f = fidelity_formula(CloneParams(p, 2));
    return {concurrence_formula(mu_value, f.b), concurrence_formula(mu_value, f.c)};
}

double wootters_concurrence(const DensityMatrix &rho) {
    if (rho.num_qubits() != 2) {
        throw std::invalid_argument("wootters_concurrence: expects a two-qubit density matrix");
    }
    ComplexMatrix flip = ComplexMatrix::Zero(4, 4);
    flip(0, 3) = -1;
    flip(1, 2) = 1;
    flip(2, 1) = 1;
    flip(3, 0) = -1;
    // The square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy) are
    // the singular values of sqrt(rho) (sy x sy) sqrt(rho)*. Taking them from an
    // SVD keeps near-zero roots accurate for almost pure states, where squaring
    // first would lose them below rounding.
    ComplexMatrix root = matrix_sqrt(rho);
    ComplexMatrix m = root * flip * root.conjugate();
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    std::array<double, 4> roots{};
    for (int i = 0; i < 4; ++i) {
        roots[static_cast<std::size_t>(i)] = svd.singularValues()[i];
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double delta(double mu_value, double p) {
    if (mu_value < 0 || mu_value > 0.5) {
        throw std::domain_error("delta: mu outside [0, 1/2]");
    }
    auto c = clone_concurrences(mu_value, p);
    return formation_entropy(2 * mu_value) - formation_entropy(c.b) - formation_entropy(c.c);
}

PhysicalRegion physical_region(double mu_value) {
    if (!(mu_value > kMuRegionLow && mu_value < kMuRegionHigh)) {
        throw std::domain_error("physical_region: mu = " + std::to_string(mu_value) + " outside (1/6, 1/2)");
    }
    double root = std::sqrt(4 * mu_value + mu_value * mu_value);
    double denom = 1 - 2 * mu_value;
    return {(1 + mu_value - root) / denom, (-3 * mu_value + root) / denom};
}

void SweepGrid::validate() const {
    if (!(mu_step > 0) || !(p_step > 0)) {
        throw std::invalid_argument("SweepGrid: steps must be positive");
    }
    if (!(mu_min >= 0 && mu_max <= 0.5 && mu_min <= mu_max)) {
        throw std::invalid_argument("SweepGrid: mu range must lie in [0, 1/2]");
    }
    if (!(p_min >= 0 && p_max <= 1 && p_min <= p_max)) {
        throw std::invalid_argument("SweepGrid: p range must lie in [0, 1]");
    }
}

std::vector<double> SweepGrid::mu_points() const {
    return grid_points(mu_min, mu_max, mu_step);
}

std::vector<double> SweepGrid::p_points() const {
    return grid_points(p_min, p_max, p_step);
}

std::vector<double> SweepGrid::region_mu_points() const {
    std::vector<double> out;
    for (double m : mu_points()) {
        if (m > kMuRegionLow && m < kMuRegionHigh) {
            out.push_back(m);
        }
    }
    return out;
}

std::size_t SweepReport::monotone_violations(double tolerance) const {
    return static_cast<std::size_t>(std::count_if(regions.begin(), regions.end(), [&](const RegionCheck &r) {
        return r.min_sum_step < -tolerance || r.min_sum_derivative < -tolerance;
    }));
}

std::size_t SweepReport::inflection_violations(double threshold) const {
    return static_cast<std::size_t>(std::count_if(regions.begin(), regions.end(), [&](const RegionCheck &r) {
        return r.inflection.has_value() && *r.inflection <= threshold;
    }));
}

std::size_t SweepReport::boundary_violations() const {
    return static_cast<std::size_t>(
        std::count_if(regions.begin(), regions.end(), [](const RegionCheck &r) { return !r.boundary_minimum; }));
}

std::size_t SweepReport::sign_violations() const {
    std::size_t total = 0;
    for (const auto &r : regions) {
        total += r.sign_mismatches;
    }
    return total;
}

std::optional<double> SweepReport::min_inflection() const {
    std::optional<double> best;
    for (const auto &r : regions) {
        if (r.inflection && (!best || *r.inflection < *best)) {
            best = r.inflection;
        }
    }
    return best;
}

bool SweepReport::passed(double tolerance) const {
    return violations == 0 && monotone_violations(tolerance) == 0 && inflection_violations() == 0 &&
           boundary_violations() == 0 && sign_violations() == 0;
}

SweepReport delta_sweep(const SweepGrid &grid) {
    grid.validate();
    const auto mus = grid.mu_points();
    const auto ps = grid.p_points();

    struct RowResult {
        double min_delta = std::numeric_limits<double>::infinity();
        double argmin_p = 0;
        std::size_t violations = 0;
        std::size_t both_positive = 0;
        std::vector<SweepRow> rows;
    };
    std::vector<RowResult> per_mu(mus.size());
    parallel_for(mus.size(), grid.jobs, [&](std::size_t i) {
        RowResult &r = per_mu[i];
        const double m = mus[i];
        if (grid.keep_rows) {
            r.rows.reserve(ps.size());
        }
        for (double p : ps) {
            auto f = fidelity_formula(CloneParams(p, 2));
            SweepRow row{m, p, f.b, f.c, concurrence_formula(m, f.b), concurrence_formula(m, f.c), 0};
            row.delta = formation_entropy(2 * m) - formation_entropy(row.c_b) - formation_entropy(row.c_c);
            if (row.delta < r.min_delta) {
                r.min_delta = row.delta;
                r.argmin_p = p;
            }
            if (row.delta < -grid.tolerance) {
                ++r.violations;
            }
            if (row.c_b > 0 && row.c_c > 0) {
                ++r.both_positive;
            }
            if (grid.keep_rows) {
                r.rows.push_back(row);
            }
        }
    });

    const auto region_mus = grid.region_mu_points();
    std::vector<RegionCheck> regions(region_mus.size());
    parallel_for(region_mus.size(), grid.jobs, [&](std::size_t i) {
        regions[i] = check_region(region_mus[i], ps, grid.p_step, grid.tolerance);
    });

    SweepReport report;
    report.min_delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mus.size(); ++i) {
        auto &r = per_mu[i];
        if (r.min_delta < report.min_delta) {
            report.min_delta = r.min_delta;
            report.argmin_mu = mus[i];
            report.argmin_p = r.argmin_p;
        }
        report.violations += r.violations;
        report.both_positive += r.both_positive;
        report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
    }
    report.evaluated = mus.size() * ps.size();
    report.regions = std::move(regions);
    return report;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string sweep_csv(const SweepReport &report) {
    std::string out = "mu,p,F_B,F_C,C_B,C_C,delta\n";
    for (const auto &r : report.rows) {
        for (double v : {r.mu, r.p, r.f_b, r.f_c, r.c_b, r.c_c}) {
            out += format_number(v);
            out += ',';
        }
        out += format_number(r.delta);
        out += '\n';
    }
    return out;
}

nlohmann::json sweep_summary(const SweepReport &report, const SweepGrid &grid) {
    nlohmann::json regions = nlohmann::json::array();
    for (const auto &r : report.regions) {
        regions.push_back({
            {"mu", r.mu},
            {"p_lo", r.region.p_lo},
            {"p_hi", r.region.p_hi},
            {"min_sum_step", r.min_sum_step},
            {"min_sum_derivative", r.min_sum_derivative},
            {"inflection", r.inflection ? nlohmann::json(*r.inflection) : nlohmann::json(nullptr)},
            {"boundary_minimum", r.boundary_minimum},
            {"sign_mismatches", r.sign_mismatches},
        });
    }
    auto min_inflection = report.min_inflection();
    return {
        {"grid",
         {{"mu_min", grid.mu_min},
          {"mu_max", grid.mu_max},
          {"mu_step", grid.mu_step},
          {"p_min", grid.p_min},
          {"p_max", grid.p_max},
          {"p_step", grid.p_step},
          {"tolerance", grid.tolerance}}},
        {"evaluated", report.evaluated},
        {"min_delta", report.min_delta},
        {"argmin", {{"mu", report.argmin_mu}, {"p", report.argmin_p}}},
        {"violations", report.violations},
        {"both_positive_points", report.both_positive},
        {"monotone_violations", report.monotone_violations(grid.tolerance)},
        {"min_inflection", min_inflection ? nlohmann::json(*min_inflection) : nlohmann::json(nullptr)},
        {"inflection_violations", report.inflection_violations()},
        {"boundary_violations", report.boundary_violations()},
        {"sign_violations", report.sign_violations()},
        {"passed", report.passed(grid.tolerance)},
        {"regions", regions},
    };
}

}  // namespace telecloning
