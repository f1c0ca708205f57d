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

#include "telecloning/qstate.h"

#include <cmath>

#include "gtest/gtest.h"
#include "telecloning/sampling.h"
#include "test_util.h"

using namespace telecloning;
using namespace telecloning::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector bell_state(BellElement e) {
    return StateVector(bell_vector(e));
}

}  // namespace

TEST(qstate, tensor_basis_product) {
    auto s = tensor(ket("0"), ket("1"));
    ASSERT_EQ(s.num_qubits(), 2u);
    EXPECT_TRUE(states_equal(s, ket("01"), 0));
    EXPECT_EQ(s[1], Complex(1.0));
}

TEST(qstate, tensor_bell_with_zero) {
    auto s = tensor(bell_state({BellKind::Phi, Parity::Plus}), ket("0"));
    ASSERT_EQ(s.dimension(), 8u);
    for (std::size_t i = 0; i < 8; ++i) {
        double expected = (i == 0 || i == 6) ? kInvSqrt2 : 0.0;
        EXPECT_NEAR(std::abs(s[i]), expected, 1e-15) << i;
    }
}

TEST(qstate, tensor_index_rule_and_norm) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_state(2, rng);
        auto b = random_state(3, rng);
        auto s = tensor(a, b);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 8; ++j) {
                EXPECT_NEAR(std::abs(s[i * 8 + j] - a[i] * b[j]), 0.0, 1e-15);
            }
        }
    }
}

TEST(qstate, apply_local_basics) {
    EXPECT_TRUE(states_equal(apply_local(ket("00"), Pauli::X, QubitIndex{0}), ket("10"), 0));
    auto z = apply_local(ket("01"), Pauli::Z, QubitIndex{1});
    EXPECT_EQ(z[1], Complex(-1.0));
    auto y = apply_local(ket("0"), Pauli::Y, QubitIndex{0});
    EXPECT_EQ(y[1], Complex(0.0, 1.0));
    auto y1 = apply_local(ket("1"), Pauli::Y, QubitIndex{0});
    EXPECT_EQ(y1[0], Complex(0.0, -1.0));
    EXPECT_TRUE(states_equal(apply_local(ket("101"), Pauli::I, QubitIndex{2}), ket("101"), 0));
}

TEST(qstate, apply_local_out_of_range) {
    EXPECT_THROW(apply_local(ket("00"), Pauli::X, QubitIndex{2}), std::out_of_range);
}

TEST(qstate, local_operations_preserve_norm) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_state(5, rng);
        for (auto op : {Pauli::X, Pauli::Y, Pauli::Z}) {
            auto t = apply_local(s, op, QubitIndex{static_cast<std::size_t>(trial % 5)});
            EXPECT_NEAR(t.norm_squared(), 1.0, 1e-9);
            // Paulis square to the identity.
            EXPECT_TRUE(states_equal(apply_local(t, op, QubitIndex{static_cast<std::size_t>(trial % 5)}), s, 1e-14));
        }
    }
}

TEST(qstate, bell_elements_orthonormal) {
    auto all = BellElement::all();
    for (auto a : all) {
        for (auto b : all) {
            Complex ip = bell_vector(a).dot(bell_vector(b));
            EXPECT_NEAR(std::abs(ip - Complex(a == b ? 1.0 : 0.0)), 0.0, 1e-15);
        }
    }
}

TEST(qstate, bell_names_round_trip) {
    for (auto e : BellElement::all()) {
        EXPECT_EQ(BellElement::parse(e.name()), e);
    }
    EXPECT_THROW(BellElement::parse("PHI"), std::invalid_argument);
}

TEST(qstate, bell_self_projection) {
    auto phi = bell_state({BellKind::Phi, Parity::Plus});
    auto r = bell_project(phi, QubitIndex{0}, QubitIndex{1}, {BellKind::Phi, Parity::Plus});
    EXPECT_NEAR(r.probability, 1.0, 1e-15);
    ASSERT_EQ(r.residual.dimension(), 1u);
    EXPECT_NEAR(std::abs(r.residual[0]), 1.0, 1e-15);
}

TEST(qstate, bell_orthogonal_outcome_is_impossible) {
    EXPECT_NEAR(bell_probability(ket("00"), QubitIndex{0}, QubitIndex{1}, {BellKind::Psi, Parity::Plus}), 0.0, 0);
    EXPECT_THROW(bell_project(ket("00"), QubitIndex{0}, QubitIndex{1}, {BellKind::Psi, Parity::Plus}), ImpossibleOutcome);
}

TEST(qstate, bell_project_rejects_bad_pairs) {
    EXPECT_THROW(bell_project(ket("000"), QubitIndex{1}, QubitIndex{1}, {}), std::invalid_argument);
    EXPECT_THROW(bell_project(ket("000"), QubitIndex{0}, QubitIndex{3}, {}), std::out_of_range);
}

TEST(qstate, bell_project_keeps_spectator_order) {
    // |1>_0 (x) Phi+_{1,3} (x) |0>_2 projected on qubits (1, 3) leaves |10>.
    auto s = superpose({{kInvSqrt2, "1000"}, {kInvSqrt2, "1101"}});
    auto r = bell_project(s, QubitIndex{1}, QubitIndex{3}, {BellKind::Phi, Parity::Plus});
    EXPECT_NEAR(r.probability, 1.0, 1e-15);
    EXPECT_TRUE(same_ray(r.residual, ket("10")));
}

TEST(qstate, bell_probabilities_complete) {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = random_state(4, rng);
        std::size_t a = static_cast<std::size_t>(trial % 4);
        std::size_t b = (a + 1 + static_cast<std::size_t>(trial / 4) % 3) % 4;
        double total = 0;
        for (auto e : BellElement::all()) {
            total += bell_probability(s, QubitIndex{a}, QubitIndex{b}, e);
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(qstate, partial_trace_of_bell_is_maximally_mixed) {
    auto rho = DensityMatrix::pure(bell_state({BellKind::Phi, Parity::Plus}));
    std::vector<QubitIndex> keep{QubitIndex{0}};
    EXPECT_TRUE(matrices_close(partial_trace(rho, keep), DensityMatrix::maximally_mixed(1), 1e-15));
    std::vector<QubitIndex> keep1{QubitIndex{1}};
    EXPECT_TRUE(matrices_close(partial_trace(rho, keep1), DensityMatrix::maximally_mixed(1), 1e-15));
}

TEST(qstate, partial_trace_of_product) {
    Rng rng(8);
    auto a = random_state(2, rng);
    auto b = random_state(1, rng);
    auto rho = DensityMatrix::pure(tensor(a, b));
    auto keep = qubit_range(0, 2);
    EXPECT_TRUE(matrices_close(partial_trace(rho, keep), DensityMatrix::pure(a), 1e-14));
    EXPECT_TRUE(matrices_close(reduced_density(tensor(a, b), keep), DensityMatrix::pure(a), 1e-14));
}

TEST(qstate, partial_trace_errors) {
    auto rho = DensityMatrix::maximally_mixed(2);
    std::vector<QubitIndex> none;
    EXPECT_THROW(partial_trace(rho, none), std::invalid_argument);
    std::vector<QubitIndex> bad{QubitIndex{2}};
    EXPECT_THROW(partial_trace(rho, bad), std::invalid_argument);
}

TEST(qstate, partial_trace_two_step_equals_joint) {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        auto rho = random_density_matrix(4, rng);
        // Keep {0, 2} directly, or keep {0, 2, 3} and then drop the last.
        std::vector<QubitIndex> joint{QubitIndex{0}, QubitIndex{2}};
        std::vector<QubitIndex> first{QubitIndex{0}, QubitIndex{2}, QubitIndex{3}};
        std::vector<QubitIndex> second{QubitIndex{0}, QubitIndex{1}};
        auto direct = partial_trace(rho, joint);
        auto staged = partial_trace(partial_trace(rho, first), second);
        EXPECT_TRUE(matrices_close(direct, staged, 1e-10));
    }
}

TEST(qstate, reduced_density_matches_partial_trace) {
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = random_state(5, rng);
        std::vector<QubitIndex> keep{QubitIndex{1}, QubitIndex{4}};
        auto via_full = partial_trace(DensityMatrix::pure(s), keep);
        auto direct = reduced_density(s, keep);
        EXPECT_TRUE(matrices_close(via_full, direct, 1e-14));
        EXPECT_NEAR(direct.entries().trace().real(), 1.0, 1e-12);
        EXPECT_NO_THROW(direct.validate());
    }
}

TEST(qstate, entropy_limits) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(ket("011"))), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(2)), 2.0, 1e-12);
}

TEST(qstate, entropy_bounds_on_random_states) {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t m = 1 + static_cast<std::size_t>(trial % 3);
        auto rho = random_density_matrix(m, rng);
        double s = von_neumann_entropy(rho);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, static_cast<double>(m) + 1e-12);
    }
}

TEST(qstate, density_matrix_invariants_enforced) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
    m(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{m}, InvalidDensityMatrix);
    ComplexMatrix t = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix{t}, InvalidDensityMatrix);
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    DensityMatrix bad(neg);
    EXPECT_THROW(bad.validate(), InvalidDensityMatrix);
    EXPECT_THROW(matrix_sqrt(bad), InvalidDensityMatrix);
}

TEST(qstate, matrix_sqrt_squares_back) {
    Rng rng(4);
    auto rho = random_density_matrix(3, rng);
    ComplexMatrix r = matrix_sqrt(rho);
    EXPECT_LT((r * r - rho.entries()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(qstate, fidelity_identities) {
    Rng rng(6);
    auto rho = random_density_matrix(2, rng);
    EXPECT_NEAR(uhlmann_fidelity(rho, rho), 1.0, 1e-9);
    EXPECT_NEAR(uhlmann_fidelity(DensityMatrix::pure(ket("0")), DensityMatrix::pure(ket("1"))), 0.0, 1e-12);
    EXPECT_THROW(uhlmann_fidelity(rho, DensityMatrix::maximally_mixed(1)), std::invalid_argument);
}

TEST(qstate, fidelity_pure_versus_mixed_is_expectation) {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        auto psi = random_state(2, rng);
        auto rho = random_density_matrix(2, rng);
        double oracle = psi.amplitudes().dot(rho.entries() * psi.amplitudes()).real();
        EXPECT_NEAR(uhlmann_fidelity(DensityMatrix::pure(psi), rho), oracle, 1e-9);
    }
}

TEST(qstate, fidelity_symmetric_and_bounded) {
    Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_density_matrix(2, rng);
        auto b = random_density_matrix(2, rng);
        double f = uhlmann_fidelity(a, b);
        EXPECT_NEAR(f, uhlmann_fidelity(b, a), 1e-8);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
        EXPECT_LT(f, 1.0 - 1e-6);
    }
}
