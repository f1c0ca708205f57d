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

#include <cmath>

#include "gtest/gtest.h"
#include "telecloning/sampling.h"
#include "test_util.h"

using namespace telecloning;
using namespace telecloning::testing;

namespace {

double binary_entropy(double x) {
    if (x <= 0 || x >= 1) {
        return 0;
    }
    return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

TwoQubitInput input_of(double a0, double a1, double a2, double a3) {
    return TwoQubitInput(std::array<Complex, 4>{a0, a1, a2, a3});
}

}  // namespace

TEST(entanglement, mu_examples) {
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(mu(input_of(1, 0, 0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(mu(input_of(r, 0, 0, r)), 0.5, 1e-15);
    EXPECT_NEAR(mu(input_of(0, r, -r, 0)), 0.5, 1e-15);
    EXPECT_NEAR(mu(input_of(0.5, 0.5, 0.5, -0.5)), 0.5, 1e-15);
    EXPECT_NEAR(mu(input_of(0.5, 0.5, 0.5, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(mu(input_of(std::sqrt(0.9), 0, 0, std::sqrt(0.1))), 0.3, 1e-15);
}

TEST(entanglement, input_requires_normalization) {
    EXPECT_THROW(input_of(1, 1, 0, 0), std::invalid_argument);
    EXPECT_THROW(TwoQubitInput(ket("000")), std::invalid_argument);
}

TEST(entanglement, mu_bounded_by_half) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        double m = mu(TwoQubitInput(random_state(2, rng)));
        EXPECT_GE(m, 0.0);
        EXPECT_LE(m, 0.5 + 1e-15);
    }
}

TEST(entanglement, formation_entropy_values) {
    EXPECT_NEAR(formation_entropy(0.0), 0.0, 1e-15);
    EXPECT_NEAR(formation_entropy(1.0), 1.0, 1e-15);
    EXPECT_NEAR(formation_entropy(0.4), 0.250225, 1e-5);
    EXPECT_NEAR(formation_entropy(0.6), 0.4689955935892812, 1e-12);
    EXPECT_NEAR(formation_entropy(1.0 + 5e-13), 1.0, 1e-15);
    EXPECT_NEAR(formation_entropy(-5e-13), 0.0, 1e-15);
    EXPECT_THROW(formation_entropy(1.001), std::domain_error);
    EXPECT_THROW(formation_entropy(-0.1), std::domain_error);
}

TEST(entanglement, formation_entropy_matches_direct_formula) {
    for (int i = 1; i < 100; ++i) {
        double x = i / 100.0;
        double direct = binary_entropy(0.5 * (1 + std::sqrt(1 - x * x)));
        EXPECT_NEAR(formation_entropy(x), direct, 1e-12);
    }
}

TEST(entanglement, formation_entropy_small_argument) {
    // (1 - sqrt(1 - x^2)) / 2 = x^2/4 + x^4/16 + ..., exact in double at x = 1e-6.
    double x = 1e-6;
    double eps = x * x / 4 * (1 + x * x / 4);
    double oracle = -eps * std::log2(eps) - (1 - eps) * std::log1p(-eps) / std::log(2.0);
    EXPECT_NEAR(formation_entropy(x) / oracle, 1.0, 1e-12);
}

TEST(entanglement, formation_entropy_monotone) {
    double prev = -1;
    for (int i = 0; i <= 1000; ++i) {
        double h = formation_entropy(i / 1000.0);
        EXPECT_GT(h, prev);
        prev = h;
    }
}

TEST(entanglement, input_entanglement_is_reduced_entropy) {
    auto skewed = input_of(std::sqrt(0.9), 0, 0, std::sqrt(0.1));
    EXPECT_NEAR(input_entanglement(skewed), 0.4689955935892812, 1e-12);
    Rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        TwoQubitInput in(random_state(2, rng));
        double s = von_neumann_entropy(reduced_density(in.state(), qubit_range(0, 1)));
        EXPECT_NEAR(input_entanglement(in), s, 1e-9);
    }
}

TEST(entanglement, concurrence_formula_examples) {
    EXPECT_NEAR(concurrence_formula(0.5, 0.7), 0.4, 1e-12);
    EXPECT_EQ(concurrence_formula(0.0, 0.7), 0.0);
    EXPECT_EQ(concurrence_formula(0.5, 0.25), 0.0);
    EXPECT_NEAR(concurrence_formula(0.5, 1.0), 1.0, 1e-12);
    EXPECT_NEAR(concurrence_formula(0.3, 1.0), 0.6, 1e-12);
}

TEST(entanglement, wootters_reference_states) {
    const double r = 1.0 / std::sqrt(2.0);
    auto bell = StateVector::from_amplitudes(std::vector<Complex>{r, 0, 0, r});
    EXPECT_NEAR(wootters_concurrence(DensityMatrix::pure(bell)), 1.0, 1e-9);
    EXPECT_NEAR(wootters_concurrence(DensityMatrix::maximally_mixed(2)), 0.0, 1e-9);
    EXPECT_NEAR(wootters_concurrence(DensityMatrix::pure(ket("01"))), 0.0, 1e-9);
    EXPECT_THROW(wootters_concurrence(DensityMatrix::maximally_mixed(3)), std::invalid_argument);
}

TEST(entanglement, wootters_pure_states) {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        auto psi = random_state(2, rng);
        EXPECT_NEAR(wootters_concurrence(DensityMatrix::pure(psi)), 2 * mu(TwoQubitInput(psi)), 1e-7);
    }
}

TEST(entanglement, wootters_werner_state) {
    // Werner state s |Phi+><Phi+| + (1 - s) I/4 has concurrence max(0, (3s - 1)/2).
    const double r = 1.0 / std::sqrt(2.0);
    auto bell = DensityMatrix::pure(StateVector::from_amplitudes(std::vector<Complex>{r, 0, 0, r}));
    for (double s : {0.0, 0.2, 1.0 / 3, 0.5, 0.8, 1.0}) {
        ComplexMatrix m = s * bell.entries() + (1 - s) * DensityMatrix::maximally_mixed(2).entries();
        EXPECT_NEAR(wootters_concurrence(DensityMatrix(m)), std::max(0.0, (3 * s - 1) / 2), 1e-7) << s;
    }
}

TEST(entanglement, clone_concurrence_bell_symmetric) {
    const double r = 1.0 / std::sqrt(2.0);
    auto bell = StateVector::from_amplitudes(std::vector<Complex>{r, 0, 0, r});
    auto omega = target_state(bell, CloneParams(0.5, 2));
    EXPECT_NEAR(wootters_concurrence(reduced_density(omega, qubit_range(0, 2))), 0.4, 1e-7);
    EXPECT_NEAR(wootters_concurrence(reduced_density(omega, qubit_range(2, 2))), 0.4, 1e-7);
    auto c = clone_concurrences(0.5, 0.5);
    EXPECT_NEAR(c.b, 0.4, 1e-12);
    EXPECT_NEAR(c.c, 0.4, 1e-12);
}

TEST(entanglement, clone_concurrence_matches_wootters) {
    Rng rng(24);
    for (int trial = 0; trial < 50; ++trial) {
        auto psi = random_state(2, rng);
        double p = rng.uniform();
        auto omega = target_state(psi, CloneParams(p, 2));
        auto formula = clone_concurrences(mu(TwoQubitInput(psi)), p);
        EXPECT_NEAR(wootters_concurrence(reduced_density(omega, qubit_range(0, 2))), formula.b, 1e-9);
        EXPECT_NEAR(wootters_concurrence(reduced_density(omega, qubit_range(2, 2))), formula.c, 1e-9);
    }
}

TEST(entanglement, clone_concurrence_mirror) {
    for (double m : {0.1, 0.2, 0.3, 0.45, 0.5}) {
        for (double p : {0.0, 0.13, 0.4, 0.5, 0.77, 1.0}) {
            auto c = clone_concurrences(m, p);
            auto mirror = clone_concurrences(m, 1 - p);
            EXPECT_NEAR(c.b, mirror.c, 1e-12);
            EXPECT_NEAR(c.c, mirror.b, 1e-12);
        }
    }
}

TEST(entanglement, delta_examples) {
    EXPECT_NEAR(delta(0.5, 0.5), 1 - 2 * formation_entropy(0.4), 1e-12);
    EXPECT_NEAR(delta(0.5, 0.5), 0.4995502, 1e-6);
    // Only one clone keeps entanglement at the extremes.
    EXPECT_NEAR(delta(0.5, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(delta(0.5, 0.0), 0.0, 1e-12);
    EXPECT_NEAR(delta(0.1, 0.5), input_entanglement(input_of(std::sqrt(0.5 + 0.5 * std::sqrt(0.96)), 0, 0, std::sqrt(0.5 - 0.5 * std::sqrt(0.96)))), 1e-9);
}

TEST(entanglement, physical_region_quarter) {
    auto region = physical_region(0.25);
    const double root = std::sqrt(1.0625);
    EXPECT_NEAR(region.p_lo, (1.25 - root) / 0.5, 1e-12);
    EXPECT_NEAR(region.p_hi, (-0.75 + root) / 0.5, 1e-12);
    EXPECT_NEAR(region.p_lo, 0.4384471871911697, 1e-12);
    EXPECT_NEAR(region.p_lo + region.p_hi, 1.0, 1e-12);
    EXPECT_TRUE(region.contains(0.5));
    EXPECT_FALSE(region.contains(region.p_lo));
}

TEST(entanglement, physical_region_edges_are_concurrence_zeros) {
    for (double m : {1.0 / 6 + 1e-3, 0.2, 0.25, 0.35, 0.45, 0.499}) {
        auto region = physical_region(m);
        const double eps = 1e-6;
        auto inside_lo = clone_concurrences(m, region.p_lo + eps);
        auto inside_hi = clone_concurrences(m, region.p_hi - eps);
        EXPECT_GT(inside_lo.b, 0.0);
        EXPECT_GT(inside_lo.c, 0.0);
        EXPECT_GT(inside_hi.b, 0.0);
        EXPECT_GT(inside_hi.c, 0.0);
        EXPECT_EQ(clone_concurrences(m, region.p_lo - eps).b, 0.0);
        EXPECT_EQ(clone_concurrences(m, region.p_hi + eps).c, 0.0);
    }
}

TEST(entanglement, physical_region_shrinks_to_half) {
    auto narrow = physical_region(1.0 / 6 + 1e-9);
    EXPECT_LT(narrow.p_hi - narrow.p_lo, 1e-3);
    EXPECT_TRUE(narrow.contains(0.5));
    // At mu -> 1/2 the clone concurrence vanishes where F = 1/2, i.e. p = 1/3.
    auto wide = physical_region(0.5 - 1e-9);
    EXPECT_NEAR(wide.p_lo, 1.0 / 3, 1e-6);
    EXPECT_NEAR(wide.p_hi, 2.0 / 3, 1e-6);
    EXPECT_THROW(physical_region(1.0 / 6), std::domain_error);
    EXPECT_THROW(physical_region(0.1), std::domain_error);
    EXPECT_THROW(physical_region(0.5), std::domain_error);
}

TEST(entanglement, teeterboard) {
    for (double m : {0.2, 0.3, 0.4, 0.5}) {
        double prev_b = -1;
        double prev_c = 2;
        for (int i = 0; i <= 100; ++i) {
            auto c = clone_concurrences(m, i / 100.0);
            EXPECT_GE(c.b, prev_b);
            EXPECT_LE(c.c, prev_c);
            prev_b = c.b;
            prev_c = c.c;
        }
    }
}

TEST(entanglement, no_entanglement_gain) {
    Rng rng(25);
    for (int trial = 0; trial < 2000; ++trial) {
        double m = 0.5 * rng.uniform();
        double p = rng.uniform();
        EXPECT_GE(delta(m, p), -1e-12) << m << " " << p;
    }
}

TEST(entanglement, sweep_grid_points) {
    SweepGrid grid;
    EXPECT_EQ(grid.mu_points().size(), 101u);
    EXPECT_EQ(grid.p_points().size(), 1001u);
    EXPECT_DOUBLE_EQ(grid.mu_points().back(), 0.5);
    for (double m : grid.region_mu_points()) {
        EXPECT_GT(m, 1.0 / 6);
        EXPECT_LT(m, 0.5);
    }
    SweepGrid bad;
    bad.p_step = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = SweepGrid{};
    bad.mu_max = 0.7;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(entanglement, default_sweep_passes) {
    SweepGrid grid;
    auto report = delta_sweep(grid);
    EXPECT_EQ(report.evaluated, 101u * 1001u);
    EXPECT_EQ(report.violations, 0u);
    EXPECT_GE(report.min_delta, -grid.tolerance);
    EXPECT_EQ(report.monotone_violations(grid.tolerance), 0u);
    EXPECT_EQ(report.inflection_violations(), 0u);
    EXPECT_EQ(report.boundary_violations(), 0u);
    EXPECT_EQ(report.sign_violations(), 0u);
    EXPECT_GT(report.both_positive, 0u);
    ASSERT_TRUE(report.min_inflection().has_value());
    EXPECT_GT(*report.min_inflection(), 0.56);
    EXPECT_TRUE(report.passed(grid.tolerance));
}

TEST(entanglement, sweep_is_job_count_independent) {
    SweepGrid grid;
    grid.mu_step = 0.05;
    grid.p_step = 0.01;
    grid.keep_rows = true;
    auto serial = delta_sweep(grid);
    grid.jobs = 3;
    auto threaded = delta_sweep(grid);
    EXPECT_EQ(sweep_csv(serial), sweep_csv(threaded));
    EXPECT_EQ(sweep_summary(serial, grid).dump(), sweep_summary(threaded, grid).dump());
}

TEST(entanglement, sweep_csv_format) {
    SweepGrid grid;
    grid.mu_min = 0.5;
    grid.mu_step = 0.1;
    grid.p_min = 0.5;
    grid.p_max = 0.5;
    grid.p_step = 0.1;
    grid.keep_rows = true;
    auto csv = sweep_csv(delta_sweep(grid));
    EXPECT_EQ(csv, "mu,p,F_B,F_C,C_B,C_C,delta\n0.5,0.5,0.7,0.7,0.4,0.4,0.499550176778\n");
    EXPECT_EQ(format_number(1.0 / 3), "0.333333333333");
}

TEST(entanglement, wootters_near_pure_clones) {
    Rng rng(26);
    for (double p : {1e-6, 1e-5, 5e-5, 0.99995, 0.99999, 1 - 1e-6, 1.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto psi = random_state(2, rng);
            auto omega = target_state(psi, CloneParams(p, 2));
            auto formula = clone_concurrences(mu(TwoQubitInput(psi)), p);
            EXPECT_NEAR(wootters_concurrence(reduced_density(omega, qubit_range(0, 2))), formula.b, 1e-9) << p;
            EXPECT_NEAR(wootters_concurrence(reduced_density(omega, qubit_range(2, 2))), formula.c, 1e-9) << p;
        }
    }
}
