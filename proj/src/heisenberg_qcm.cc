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

#include "telecloning/heisenberg_qcm.h"

#include <cmath>
#include <string>

namespace telecloning {

CloneParams::CloneParams(double p, std::size_t n) : p_(p), n_(n) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("CloneParams: p = " + std::to_string(p) + " is outside [0, 1]");
    }
    // Closed forms work for any n; dense routines check their own register size.
    if (n < 1 || n > 30) {
        throw std::invalid_argument("CloneParams: n = " + std::to_string(n) + " is unsupported");
    }
}

double CloneParams::normalizer() const {
    double dm1 = static_cast<double>(d() - 1);
    return 1.0 + dm1 * (p_ * p_ + q() * q());
}

StateVector eta_state(std::size_t j, const CloneParams &params) {
    const std::size_t d = params.d();
    const std::size_t n = params.n();
    if (j >= d) {
        throw std::out_of_range("eta_state: j = " + std::to_string(j) + " out of range for d = " + std::to_string(d));
    }
    if (3 * n > kMaxQubits) {
        throw std::invalid_argument("eta_state: 3n qubits exceeds the dense limit");
    }
    auto index = [&](std::size_t b, std::size_t c, std::size_t a) {
        return static_cast<Eigen::Index>((b << (2 * n)) | (c << n) | a);
    };
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << (3 * n)));
    const double scale = 1.0 / std::sqrt(params.normalizer());
    v[index(j, j, j)] = scale;
    for (std::size_t r = 1; r < d; ++r) {
        std::size_t k = (j + r) % d;
        v[index(j, k, k)] += scale * params.p();
        v[index(k, j, k)] += scale * params.q();
    }
    return StateVector(std::move(v));
}

StateVector target_state(const StateVector &psi, const CloneParams &params) {
    if (psi.num_qubits() != params.n()) {
        throw std::invalid_argument("target_state: input has the wrong number of qubits");
    }
    ComplexVector acc = ComplexVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << (3 * params.n())));
    for (std::size_t j = 0; j < params.d(); ++j) {
        acc += psi[j] * eta_state(j, params).amplitudes();
    }
    return StateVector(std::move(acc));
}

std::vector<QubitIndex> clone_register(Side side, const CloneParams &params, std::size_t offset) {
    return qubit_range(offset + (side == Side::B ? 0 : params.n()), params.n());
}

std::vector<QubitIndex> ancilla_register(const CloneParams &params, std::size_t offset) {
    return qubit_range(offset + 2 * params.n(), params.n());
}

StateVector apply_triple(const StateVector &state, Pauli op, std::size_t bit, const CloneParams &params, std::size_t offset) {
    const std::size_t n = params.n();
    if (bit >= n) {
        throw std::out_of_range("apply_triple: bit position out of range");
    }
    StateVector out = apply_local(state, op, QubitIndex{offset + bit});
    out = apply_local(out, op, QubitIndex{offset + n + bit});
    return apply_local(out, op, QubitIndex{offset + 2 * n + bit});
}

ClonePair clone_pair_formula(const StateVector &psi, const CloneParams &params) {
    if (psi.num_qubits() != params.n()) {
        throw std::invalid_argument("clone_pair_formula: input has the wrong number of qubits");
    }
    if (!psi.is_normalized()) {
        throw std::invalid_argument("clone_pair_formula: input is not normalized");
    }
    const double dm1 = static_cast<double>(params.d() - 1);
    const double p = params.p();
    const double q = params.q();
    const double norm = params.normalizer();
    const auto dim = static_cast<Eigen::Index>(params.d());
    const ComplexMatrix proj = psi.amplitudes() * psi.amplitudes().adjoint();
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

    ComplexMatrix b = ((1.0 - q * q + dm1 * p * p) * proj + q * q * id) / norm;
    ComplexMatrix c = ((1.0 - p * p + dm1 * q * q) * proj + p * p * id) / norm;
    return {DensityMatrix(std::move(b)), DensityMatrix(std::move(c))};
}

CloneFidelities fidelity_formula(const CloneParams &params) {
    const double dm1 = static_cast<double>(params.d() - 1);
    const double norm = params.normalizer();
    return {
        (1.0 + dm1 * params.p() * params.p()) / norm,
        (1.0 + dm1 * params.q() * params.q()) / norm,
    };
}

}  // namespace telecloning
