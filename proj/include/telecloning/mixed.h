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

#ifndef TELECLONING_MIXED_H
#define TELECLONING_MIXED_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "telecloning/heisenberg_qcm.h"
#include "telecloning/protocol.h"
#include "telecloning/qstate.h"

/// 1->4 telecloning of rho = sum_k alpha_k |k><k| through its purification.
///
/// The purification lives on 2n qubits (A then A'), so the pure protocol runs
/// with CloneParams of 2n qubits and d = 2^{2n}. Its clone registers B and C
/// each split into an n-qubit half and a primed n-qubit half.
namespace telecloning {

class MixedInput {
   public:
    /// Throws unless the weights are nonnegative, sum to 1 within 1e-12 and
    /// number a power of two (>= 2).
    explicit MixedInput(std::vector<double> alphas);

    const std::vector<double> &alphas() const { return alphas_; }
    std::size_t n() const { return n_; }
    /// Protocol dimension 2^{2n}.
    std::size_t d() const { return alphas_.size() * alphas_.size(); }
    DensityMatrix density() const { return DensityMatrix::diagonal(alphas_); }

    static MixedInput vertex(std::size_t n, std::size_t k);
    static MixedInput uniform(std::size_t n);

   private:
    std::vector<double> alphas_;
    std::size_t n_ = 0;
};

/// sum_k sqrt(alpha_k) |k>_A |k>_{A'} over 2n qubits.
StateVector purify(const MixedInput &input);

struct MixedClones {
    DensityMatrix rho_b;
    DensityMatrix rho_c;
    DensityMatrix rho_b_prime;
    DensityMatrix rho_c_prime;
    /// Two-half clones of the purification.
    DensityMatrix rho_bb_prime;
    DensityMatrix rho_cc_prime;
    ProtocolTranscript transcript;
};

/// Runs the pure protocol on purify(input). `params.n()` must equal 2 n.
/// Registers beyond 10 qubits (n >= 2) need `allow_large`.
MixedClones teleclone_mixed(
    const MixedInput &input, const CloneParams &params, const MeasurementMode &mode, bool allow_large = false);

/// {[1 - q^2 + (d-1)p^2] rho + sqrt(d) q^2 I} / [1 + (d-1)(p^2+q^2)], C side by p <-> q.
DensityMatrix clone_formula_mixed(const MixedInput &input, const CloneParams &params, Side side = Side::B);

/// Closed-form Uhlmann fidelity between rho and its clone on `side`.
double fidelity_mixed(const MixedInput &input, const CloneParams &params, Side side = Side::B);

struct FidelityBounds {
    double lower_b = 0;
    double lower_c = 0;
};

/// [1 - q^2 + (d-1)p^2 + sqrt(d) q^2] / [1 + (d-1)(p^2+q^2)] and its p <-> q twin.
FidelityBounds fidelity_bounds(const CloneParams &params);

struct MonotonicityResult {
    /// F(rho, rho_B) from the simulated clone.
    double f_mixed = 0;
    /// F(|Psi><Psi|, rho_BB') from the simulated two-half clone.
    double f_pure = 0;
    bool holds(double tolerance = kExactTolerance) const { return f_mixed >= f_pure - tolerance; }
};

MonotonicityResult monotonicity_check(
    const MixedInput &input, const CloneParams &params, Side side = Side::B, bool allow_large = false);

struct BoundSweepRow {
    std::vector<double> alphas;
    double p = 0;
    double f_mixed = 0;
    double lower_bound = 0;
    double f_pure = 0;
    bool ok = false;
};

struct BoundSweepOptions {
    std::size_t n = 1;
    double p = 0.5;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    /// Simulate each point; otherwise only closed forms are used.
    bool simulate = true;
    bool allow_large = false;
    unsigned jobs = 1;
};

/// Rows for every simplex vertex, the uniform point, then `samples` random
/// points. With simulation, f_mixed and f_pure come from the protocol and ok
/// also requires agreement with the closed form within 1e-8.
std::vector<BoundSweepRow> bound_sweep(const BoundSweepOptions &options);

/// Header alpha_0..alpha_{k-1},p,F_mixed,lower_bound,F_pure,ok.
std::string bound_sweep_csv(const std::vector<BoundSweepRow> &rows);

}  // namespace telecloning

#endif
