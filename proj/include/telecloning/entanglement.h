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

#ifndef TELECLONING_ENTANGLEMENT_H
#define TELECLONING_ENTANGLEMENT_H

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "telecloning/heisenberg_qcm.h"
#include "telecloning/qstate.h"

namespace telecloning {

/// alpha_0|00> + alpha_1|01> + alpha_2|10> + alpha_3|11>.
class TwoQubitInput {
   public:
    /// Throws unless sum |alpha_i|^2 = 1 within 1e-12.
    explicit TwoQubitInput(std::array<Complex, 4> alphas);
    explicit TwoQubitInput(const StateVector &state);

    const std::array<Complex, 4> &alphas() const { return alphas_; }
    StateVector state() const;

   private:
    std::array<Complex, 4> alphas_;
};

/// |alpha_0 alpha_3 - alpha_1 alpha_2|, in [0, 1/2].
double mu(const TwoQubitInput &input);

/// Entanglement of formation as a function of concurrence x: the binary
/// entropy of (1 + sqrt(1 - x^2)) / 2. Inputs within 1e-12 of [0, 1] are
/// clamped; anything further out throws std::domain_error.
double formation_entropy(double x);

/// H(2 mu), the entanglement of the pure input.
double input_entanglement(const TwoQubitInput &input);

/// max{0, (8/3 F - 2/3) mu - 2/3 (1 - F)}: concurrence of a d = 4 clone with
/// fidelity F when the input has entanglement parameter mu.
double concurrence_formula(double mu, double fidelity);

struct CloneConcurrences {
    double b = 0;
    double c = 0;
};

/// Concurrence of both clones for two-qubit inputs (d = 4) at weight p.
CloneConcurrences clone_concurrences(double mu, double p);

/// Wootters concurrence: the square roots of the spectrum of
/// rho (sy x sy) rho* (sy x sy), taken as singular values of sqrt(rho) (sy x sy) sqrt(rho)*.
double wootters_concurrence(const DensityMatrix &rho);

/// H(2 mu) - H(C_B(p)) - H(C_C(p)).
double delta(double mu, double p);

struct PhysicalRegion {
    double p_lo = 0;
    double p_hi = 0;
    bool contains(double p) const { return p > p_lo && p < p_hi; }
};

/// Open interval of p where both clone concurrences are positive, for
/// mu strictly inside (1/6, 1/2). Throws std::domain_error otherwise.
PhysicalRegion physical_region(double mu);

struct SweepGrid {
    double mu_min = 0.0;
    double mu_max = 0.5;
    double mu_step = 0.005;
    double p_min = 0.0;
    double p_max = 1.0;
    double p_step = 0.001;
    double tolerance = 1e-9;
    unsigned jobs = 1;
    bool keep_rows = false;

    /// Throws std::invalid_argument on non-positive steps or bad bounds.
    void validate() const;
    std::vector<double> mu_points() const;
    std::vector<double> p_points() const;
    /// Grid mu values strictly inside (1/6, 1/2).
    std::vector<double> region_mu_points() const;
};

struct SweepRow {
    double mu = 0;
    double p = 0;
    double f_b = 0;
    double f_c = 0;
    double c_b = 0;
    double c_c = 0;
    double delta = 0;
};

/// Per-mu checks on the region where both clones are entangled.
struct RegionCheck {
    double mu = 0;
    PhysicalRegion region;
    /// Smallest forward difference of H(C_B) + H(C_C) on [1/2, p_hi].
    double min_sum_step = 0;
    /// Smallest central-difference derivative of the same sum on [1/2, p_hi].
    double min_sum_derivative = 0;
    /// First zero of the second derivative of H(C_B(p)) on (p_lo, 2/3];
    /// empty when the curve stays convex up to 2/3.
    std::optional<double> inflection;
    /// Minimum of delta over grid points inside the region sits at an end point.
    bool boundary_minimum = true;
    /// Count of grid points disagreeing with "both positive iff inside".
    std::size_t sign_mismatches = 0;
};

struct SweepReport {
    double min_delta = 0;
    double argmin_mu = 0;
    double argmin_p = 0;
    std::size_t evaluated = 0;
    std::size_t violations = 0;
    /// Grid points with both concurrences positive.
    std::size_t both_positive = 0;
    std::vector<RegionCheck> regions;
    std::vector<SweepRow> rows;

    std::size_t monotone_violations(double tolerance) const;
    std::size_t inflection_violations(double threshold = 0.56) const;
    std::size_t boundary_violations() const;
    std::size_t sign_violations() const;
    /// Smallest inflection estimate found, if any.
    std::optional<double> min_inflection() const;
    bool passed(double tolerance) const;
};

SweepReport delta_sweep(const SweepGrid &grid);

/// CSV with header mu,p,F_B,F_C,C_B,C_C,delta (12 significant digits).
std::string sweep_csv(const SweepReport &report);
nlohmann::json sweep_summary(const SweepReport &report, const SweepGrid &grid);

/// Formats with %.12g; the C locale is assumed.
std::string format_number(double value);

}  // namespace telecloning

#endif
