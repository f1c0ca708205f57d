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

#include "telecloning/sampling.h"

#include <cmath>
#include <numbers>

namespace telecloning {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform_open_zero()));
    double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

StateVector random_state(std::size_t num_qubits, Rng &rng) {
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double re = rng.normal();
        double im = rng.normal();
        v[i] = Complex(re, im);
    }
    return StateVector::normalized(std::move(v));
}

std::vector<double> random_simplex_point(std::size_t count, Rng &rng) {
    std::vector<double> w(count);
    double total = 0;
    for (auto &x : w) {
        x = -std::log(rng.uniform_open_zero());
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

DensityMatrix random_density_matrix(std::size_t num_qubits, Rng &rng) {
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(std::move(rho));
}

}  // namespace telecloning
