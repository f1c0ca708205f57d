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

#ifndef TELECLONING_HEISENBERG_QCM_H
#define TELECLONING_HEISENBERG_QCM_H

#include <cstddef>
#include <span>

#include "telecloning/qstate.h"

namespace telecloning {

/// Asymmetry weights of the cloning machine on an n-qubit (d = 2^n) input.
///
/// p weights the terms where clone C is excited and q = 1 - p those where
/// clone B is excited, so larger p favours clone B.
class CloneParams {
   public:
    /// Throws std::invalid_argument unless p is in [0, 1] and 1 <= n <= 30.
    CloneParams(double p, std::size_t n);

    double p() const { return p_; }
    double q() const { return 1.0 - p_; }
    std::size_t n() const { return n_; }
    std::size_t d() const { return std::size_t{1} << n_; }

    /// 1 + (d - 1)(p^2 + q^2).
    double normalizer() const;
    /// Same parameters with p and q exchanged.
    CloneParams swapped() const { return CloneParams(q(), n_); }

   private:
    double p_;
    std::size_t n_;
};

/// Which clone a closed-form quantity refers to.
enum class Side { B, C };

/// Machine output for basis input |j> on 3n qubits laid out (B, C, anc),
/// each block n qubits big-endian.
StateVector eta_state(std::size_t j, const CloneParams &params);

/// Sum_j alpha_j |eta_j>, the state carrying both optimal clones.
StateVector target_state(const StateVector &psi, const CloneParams &params);

/// Registers inside a (B, C, anc) block that starts at qubit `offset`.
std::vector<QubitIndex> clone_register(Side side, const CloneParams &params, std::size_t offset = 0);
std::vector<QubitIndex> ancilla_register(const CloneParams &params, std::size_t offset = 0);

/// Applies `op` to B_i, C_i and a_i, where `bit` is the 0-based position inside
/// each n-qubit block and the block starts at qubit `offset`.
StateVector apply_triple(const StateVector &state, Pauli op, std::size_t bit, const CloneParams &params, std::size_t offset = 0);

struct ClonePair {
    DensityMatrix rho_b;
    DensityMatrix rho_c;
};

/// Closed-form reduced clones for input psi:
/// rho_B = {[1 - q^2 + (d-1)p^2]|psi><psi| + q^2 I} / [1 + (d-1)(p^2+q^2)], rho_C by p <-> q.
ClonePair clone_pair_formula(const StateVector &psi, const CloneParams &params);

struct CloneFidelities {
    double b = 0;
    double c = 0;
};

/// F_B = [1 + (d-1)p^2] / [1 + (d-1)(p^2+q^2)], F_C by p <-> q.
CloneFidelities fidelity_formula(const CloneParams &params);

}  // namespace telecloning

#endif
