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

#ifndef TELECLONING_QSTATE_H
#define TELECLONING_QSTATE_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/// Dense state-vector and density-matrix primitives.
///
/// Qubit ordering is big-endian throughout the library: qubit position 0 of an
/// m-qubit register is the most significant bit of the basis label, so the
/// amplitude of |c_0 c_1 ... c_{m-1}> lives at index sum_k c_k 2^{m-1-k}.
namespace telecloning {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Tolerance for identities that hold exactly in exact arithmetic.
inline constexpr double kExactTolerance = 1e-9;
/// Tolerance for quantities that pass through an eigensolver.
inline constexpr double kEigenTolerance = 1e-6;
/// Eigenvalues in [-kClipTolerance, 0) are treated as zero by matrix functions.
inline constexpr double kClipTolerance = 1e-12;
/// Largest register the dense representation accepts.
inline constexpr std::size_t kMaxQubits = 20;

/// Raised when a projection has (numerically) zero probability.
class ImpossibleOutcome : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a matrix violates the density-matrix invariants.
class InvalidDensityMatrix : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct QubitIndex {
    std::size_t position = 0;

    friend bool operator==(QubitIndex, QubitIndex) = default;
    friend auto operator<=>(QubitIndex, QubitIndex) = default;
};

enum class Pauli { I, X, Y, Z };

char pauli_name(Pauli op);

enum class BellKind { Phi, Psi };
enum class Parity { Plus, Minus };

struct BellElement {
    BellKind kind = BellKind::Phi;
    Parity parity = Parity::Plus;

    friend bool operator==(BellElement, BellElement) = default;

    /// "PHI+", "PHI-", "PSI+" or "PSI-".
    std::string name() const;
    static BellElement parse(const std::string &text);
    /// The four elements in the order PHI+, PHI-, PSI+, PSI-.
    static std::span<const BellElement> all();
};

/// Two-qubit Bell vector as 4 amplitudes over |00>,|01>,|10>,|11>.
ComplexVector bell_vector(BellElement element);

class StateVector {
   public:
    StateVector() = default;
    /// Takes ownership of `amplitudes`; the length must be a power of two.
    explicit StateVector(ComplexVector amplitudes);

    /// |index> on `num_qubits` qubits.
    static StateVector basis(std::size_t num_qubits, std::size_t index);
    /// Normalizes `amplitudes`; throws if the vector is zero.
    static StateVector normalized(ComplexVector amplitudes);
    static StateVector from_amplitudes(std::span<const Complex> amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }

    double norm_squared() const { return amplitudes_.squaredNorm(); }
    bool is_normalized(double tolerance = kExactTolerance) const;

    /// <this|other>.
    Complex inner(const StateVector &other) const;
    /// |<this|other>|^2, the phase-insensitive equality measure.
    double overlap(const StateVector &other) const;

   private:
    ComplexVector amplitudes_;
    std::size_t num_qubits_ = 0;
};

class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// Checks that `entries` is square with power-of-two size, Hermitian and
    /// unit-trace within `tolerance`. Positivity is checked by `validate`.
    explicit DensityMatrix(ComplexMatrix entries, double tolerance = kExactTolerance);

    static DensityMatrix pure(const StateVector &state);
    static DensityMatrix maximally_mixed(std::size_t num_qubits);
    static DensityMatrix diagonal(std::span<const double> weights);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
    const ComplexMatrix &entries() const { return entries_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    /// Ascending real eigenvalues.
    Eigen::VectorXd eigenvalues() const;
    /// Throws InvalidDensityMatrix when an eigenvalue is below -tolerance.
    void validate(double tolerance = kExactTolerance) const;
    /// <psi|rho|psi>.
    double expectation(const StateVector &psi) const;
    /// Largest entrywise difference.
    double max_abs_diff(const DensityMatrix &other) const;

   private:
    ComplexMatrix entries_;
    std::size_t num_qubits_ = 0;
};

StateVector tensor(const StateVector &a, const StateVector &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

StateVector apply_local(const StateVector &state, Pauli op, QubitIndex target);

/// Outcome probability of projecting `pair` onto `element` without collapsing.
double bell_probability(const StateVector &state, QubitIndex first, QubitIndex second, BellElement element);

struct BellProjection {
    /// Renormalized state of the remaining qubits, in their original relative order.
    StateVector residual;
    double probability = 0;
};

/// Projects (first, second) onto <element| and removes the two qubits.
///
/// `first` plays the role of the left qubit of the Bell vector. Throws
/// ImpossibleOutcome when the probability is below `min_probability`.
BellProjection bell_project(
    const StateVector &state,
    QubitIndex first,
    QubitIndex second,
    BellElement element,
    double min_probability = 1e-15);

/// Reduced state on `keep` (ordered as given positions sorted ascending).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const QubitIndex> keep);
/// Same as partial_trace(pure(state), keep) without forming the full projector.
DensityMatrix reduced_density(const StateVector &state, std::span<const QubitIndex> keep);

/// Contiguous run of qubit positions [first, first + count).
std::vector<QubitIndex> qubit_range(std::size_t first, std::size_t count);

/// sqrt(rho) by Hermitian eigendecomposition.
ComplexMatrix matrix_sqrt(const DensityMatrix &rho);

/// -sum lambda log2 lambda, eigenvalues below 1e-12 counted as zero.
double von_neumann_entropy(const DensityMatrix &rho);

/// [Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2, clamped to [0, 1].
double uhlmann_fidelity(const DensityMatrix &rho1, const DensityMatrix &rho2);

}  // namespace telecloning

#endif
