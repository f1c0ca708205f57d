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

#ifndef TELECLONING_SAMPLING_H
#define TELECLONING_SAMPLING_H

#include <cstdint>
#include <random>
#include <vector>

#include "telecloning/qstate.h"

namespace telecloning {

/// Seeded generator with platform-independent derived distributions.
///
/// std::uniform_real_distribution and friends are implementation-defined, so
/// every draw here is built directly from mt19937_64's specified output.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform();
    /// Uniform in (0, 1].
    double uniform_open_zero() { return 1.0 - uniform(); }
    double normal();

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

/// Haar-distributed pure state on `num_qubits` qubits (normalized Gaussian vector).
StateVector random_state(std::size_t num_qubits, Rng &rng);

/// Uniform point on the probability simplex with `count` entries.
std::vector<double> random_simplex_point(std::size_t count, Rng &rng);

/// Random density matrix of full rank: G G^dagger / Tr, G complex Gaussian.
DensityMatrix random_density_matrix(std::size_t num_qubits, Rng &rng);

}  // namespace telecloning

#endif
