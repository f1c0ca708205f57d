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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace telecloning {

namespace {

std::size_t qubits_for_dimension(std::size_t dim, const char *what) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(dim) + " is not a power of two");
    }
    auto m = static_cast<std::size_t>(std::countr_zero(dim));
    if (m > kMaxQubits) {
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(m) + " qubits exceeds the dense limit");
    }
    return m;
}

std::size_t bit_of(std::size_t num_qubits, QubitIndex q) {
    return num_qubits - 1 - q.position;
}

// Full-register index for every value of the sub-register formed by `positions`
// (ascending), with every other qubit held at 0.
std::vector<std::size_t> scatter_table(std::size_t num_qubits, std::span<const std::size_t> positions) {
    std::size_t k = positions.size();
    std::vector<std::size_t> table(std::size_t{1} << k, 0);
    for (std::size_t v = 0; v < table.size(); ++v) {
        std::size_t full = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((v >> (k - 1 - j)) & 1) {
                full |= std::size_t{1} << (num_qubits - 1 - positions[j]);
            }
        }
        table[v] = full;
    }
    return table;
}

struct Split {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;
};

Split split_register(std::size_t num_qubits, std::span<const QubitIndex> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace: keep set is empty");
    }
    std::vector<bool> mark(num_qubits, false);
    for (auto q : keep) {
        if (q.position >= num_qubits) {
            throw std::invalid_argument("partial trace: qubit " + std::to_string(q.position) + " out of range");
        }
        if (mark[q.position]) {
            throw std::invalid_argument("partial trace: duplicate qubit " + std::to_string(q.position));
        }
        mark[q.position] = true;
    }
    Split s;
    for (std::size_t i = 0; i < num_qubits; ++i) {
        (mark[i] ? s.kept : s.traced).push_back(i);
    }
    return s;
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_eigen(const ComplexMatrix &m, bool vectors) {
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

}  // namespace

char pauli_name(Pauli op) {
    switch (op) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

std::string BellElement::name() const {
    std::string s = kind == BellKind::Phi ? "PHI" : "PSI";
    s += parity == Parity::Plus ? '+' : '-';
    return s;
}

BellElement BellElement::parse(const std::string &text) {
    for (auto e : all()) {
        if (e.name() == text) {
            return e;
        }
    }
    throw std::invalid_argument("unknown Bell element '" + text + "'");
}

std::span<const BellElement> BellElement::all() {
    static constexpr std::array<BellElement, 4> elements{{
        {BellKind::Phi, Parity::Plus},
        {BellKind::Phi, Parity::Minus},
        {BellKind::Psi, Parity::Plus},
        {BellKind::Psi, Parity::Minus},
    }};
    return elements;
}

ComplexVector bell_vector(BellElement element) {
    const double r = 1.0 / std::sqrt(2.0);
    const double sign = element.parity == Parity::Plus ? 1.0 : -1.0;
    ComplexVector v = ComplexVector::Zero(4);
    if (element.kind == BellKind::Phi) {
        v[0] = r;
        v[3] = sign * r;
    } else {
        v[1] = r;
        v[2] = sign * r;
    }
    return v;
}

StateVector::StateVector(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)),
      num_qubits_(qubits_for_dimension(static_cast<std::size_t>(amplitudes_.size()), "StateVector")) {
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    if (num_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector::basis: too many qubits");
    }
    std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw std::invalid_argument("StateVector::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
    double n = amplitudes.norm();
    if (n == 0.0) {
        throw std::invalid_argument("StateVector::normalized: zero vector");
    }
    amplitudes /= n;
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::from_amplitudes(std::span<const Complex> amplitudes) {
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    std::copy(amplitudes.begin(), amplitudes.end(), v.data());
    return StateVector(std::move(v));
}

bool StateVector::is_normalized(double tolerance) const {
    return std::abs(norm_squared() - 1.0) <= tolerance;
}

Complex StateVector::inner(const StateVector &other) const {
    if (dimension() != other.dimension()) {
        throw std::invalid_argument("inner product: dimension mismatch");
    }
    return amplitudes_.dot(other.amplitudes_);
}

double StateVector::overlap(const StateVector &other) const {
    return std::norm(inner(other));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, double tolerance) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw InvalidDensityMatrix("density matrix is not square");
    }
    num_qubits_ = qubits_for_dimension(static_cast<std::size_t>(entries_.rows()), "DensityMatrix");
    double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tolerance) {
        throw InvalidDensityMatrix("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    Complex tr = entries_.trace();
    if (std::abs(tr - 1.0) > tolerance) {
        throw InvalidDensityMatrix("density matrix trace is " + std::to_string(tr.real()));
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &state) {
    const auto &a = state.amplitudes();
    return DensityMatrix(a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> weights) {
    auto dim = static_cast<Eigen::Index>(weights.size());
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        m(i, i) = weights[static_cast<std::size_t>(i)];
    }
    return DensityMatrix(std::move(m));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    return hermitian_eigen(entries_, false).eigenvalues();
}

void DensityMatrix::validate(double tolerance) const {
    double lowest = eigenvalues().minCoeff();
    if (lowest < -tolerance) {
        throw InvalidDensityMatrix("density matrix has negative eigenvalue " + std::to_string(lowest));
    }
}

double DensityMatrix::expectation(const StateVector &psi) const {
    if (psi.dimension() != dimension()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    return psi.amplitudes().dot(entries_ * psi.amplitudes()).real();
}

double DensityMatrix::max_abs_diff(const DensityMatrix &other) const {
    if (other.dimension() != dimension()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
        throw std::invalid_argument("tensor: result exceeds the dense limit");
    }
    const auto &x = a.amplitudes();
    const auto &y = b.amplitudes();
    ComplexVector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out.segment(i * y.size(), y.size()) = x[i] * y;
    }
    return StateVector(std::move(out));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    const auto &x = a.entries();
    const auto &y = b.entries();
    ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return DensityMatrix(std::move(out));
}

StateVector apply_local(const StateVector &state, Pauli op, QubitIndex target) {
    if (target.position >= state.num_qubits()) {
        throw std::out_of_range(
            "apply_local: qubit " + std::to_string(target.position) + " out of range for " +
            std::to_string(state.num_qubits()) + " qubits");
    }
    const std::size_t mask = std::size_t{1} << bit_of(state.num_qubits(), target);
    const auto &in = state.amplitudes();
    ComplexVector out(in.size());
    const Complex i_unit(0.0, 1.0);
    for (std::size_t k = 0; k < state.dimension(); ++k) {
        auto idx = static_cast<Eigen::Index>(k);
        bool one = (k & mask) != 0;
        switch (op) {
            case Pauli::I:
                out[idx] = in[idx];
                break;
            case Pauli::X:
                out[idx] = in[static_cast<Eigen::Index>(k ^ mask)];
                break;
            case Pauli::Y:
                // Y|0> = i|1>, Y|1> = -i|0>.
                out[idx] = (one ? i_unit : -i_unit) * in[static_cast<Eigen::Index>(k ^ mask)];
                break;
            case Pauli::Z:
                out[idx] = one ? -in[idx] : in[idx];
                break;
        }
    }
    return StateVector(std::move(out));
}

namespace {

void check_pair(const StateVector &state, QubitIndex first, QubitIndex second) {
    if (first.position >= state.num_qubits() || second.position >= state.num_qubits()) {
        throw std::out_of_range("Bell projection: qubit out of range");
    }
    if (first == second) {
        throw std::invalid_argument("Bell projection: qubits must be distinct");
    }
}

ComplexVector project_unnormalized(const StateVector &state, QubitIndex first, QubitIndex second, BellElement element) {
    check_pair(state, first, second);
    const std::size_t m = state.num_qubits();
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < m; ++i) {
        if (i != first.position && i != second.position) {
            rest.push_back(i);
        }
    }
    const auto table = scatter_table(m, rest);
    const std::size_t b1 = std::size_t{1} << bit_of(m, first);
    const std::size_t b2 = std::size_t{1} << bit_of(m, second);
    const std::array<std::size_t, 4> offsets{0, b2, b1, b1 | b2};
    const ComplexVector bell = bell_vector(element);
    const auto &in = state.amplitudes();

    ComplexVector out(static_cast<Eigen::Index>(table.size()));
    for (std::size_t r = 0; r < table.size(); ++r) {
        Complex acc = 0;
        for (std::size_t ab = 0; ab < 4; ++ab) {
            Complex c = bell[static_cast<Eigen::Index>(ab)];
            if (c != 0.0) {
                acc += std::conj(c) * in[static_cast<Eigen::Index>(table[r] | offsets[ab])];
            }
        }
        out[static_cast<Eigen::Index>(r)] = acc;
    }
    return out;
}

}  // namespace

double bell_probability(const StateVector &state, QubitIndex first, QubitIndex second, BellElement element) {
    return project_unnormalized(state, first, second, element).squaredNorm() / state.norm_squared();
}

BellProjection bell_project(
    const StateVector &state, QubitIndex first, QubitIndex second, BellElement element, double min_probability) {
    ComplexVector v = project_unnormalized(state, first, second, element);
    double prob = v.squaredNorm() / state.norm_squared();
    if (prob < min_probability) {
        throw ImpossibleOutcome(
            "Bell outcome " + element.name() + " on qubits (" + std::to_string(first.position) + "," +
            std::to_string(second.position) + ") has probability " + std::to_string(prob));
    }
    v /= v.norm();
    return {StateVector(std::move(v)), prob};
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const QubitIndex> keep) {
    const std::size_t m = rho.num_qubits();
    auto split = split_register(m, keep);
    const auto kept = scatter_table(m, split.kept);
    const auto env = scatter_table(m, split.traced);
    const auto &full = rho.entries();
    auto dk = static_cast<Eigen::Index>(kept.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex acc = 0;
            for (auto e : env) {
                acc += full(
                    static_cast<Eigen::Index>(kept[static_cast<std::size_t>(r)] | e),
                    static_cast<Eigen::Index>(kept[static_cast<std::size_t>(c)] | e));
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix reduced_density(const StateVector &state, std::span<const QubitIndex> keep) {
    const std::size_t m = state.num_qubits();
    auto split = split_register(m, keep);
    const auto kept = scatter_table(m, split.kept);
    const auto env = scatter_table(m, split.traced);
    const auto &amps = state.amplitudes();
    ComplexMatrix block(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(env.size()));
    for (std::size_t k = 0; k < kept.size(); ++k) {
        for (std::size_t e = 0; e < env.size(); ++e) {
            block(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(e)) =
                amps[static_cast<Eigen::Index>(kept[k] | env[e])];
        }
    }
    ComplexMatrix out = block * block.adjoint();
    // Exact Hermitian symmetry; the product is Hermitian only to roundoff.
    out = (0.5 * (out + out.adjoint())).eval();
    return DensityMatrix(std::move(out));
}

std::vector<QubitIndex> qubit_range(std::size_t first, std::size_t count) {
    std::vector<QubitIndex> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = QubitIndex{first + i};
    }
    return out;
}

ComplexMatrix matrix_sqrt(const DensityMatrix &rho) {
    auto es = hermitian_eigen(rho.entries(), true);
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals[i] < -kClipTolerance) {
            throw InvalidDensityMatrix("matrix_sqrt: negative eigenvalue " + std::to_string(vals[i]));
        }
        vals[i] = std::sqrt(std::max(vals[i], 0.0));
    }
    const auto &vecs = es.eigenvectors();
    return vecs * vals.asDiagonal() * vecs.adjoint();
}

double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 1e-12) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::max(s, 0.0);
}

double uhlmann_fidelity(const DensityMatrix &rho1, const DensityMatrix &rho2) {
    if (rho1.dimension() != rho2.dimension()) {
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    }
    // Work on the support of the lower-rank argument: with W = V_s sqrt(D_s),
    // W^dag rho_other W has the nonzero spectrum of sqrt(rho) rho_other sqrt(rho),
    // and dropping the null space avoids square roots of rounding noise.
    auto es1 = hermitian_eigen(rho1.entries(), true);
    auto es2 = hermitian_eigen(rho2.entries(), true);
    auto rank = [](const Eigen::VectorXd &vals) { return (vals.array() > kClipTolerance).count(); };
    bool first = rank(es1.eigenvalues()) <= rank(es2.eigenvalues());
    const auto &es = first ? es1 : es2;
    const ComplexMatrix &other = first ? rho2.entries() : rho1.entries();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i] < -kClipTolerance) {
            throw InvalidDensityMatrix("uhlmann_fidelity: negative eigenvalue " + std::to_string(es.eigenvalues()[i]));
        }
    }
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i] > kClipTolerance) {
            support.push_back(i);
        }
    }
    if (support.empty()) {
        return 0.0;
    }
    ComplexMatrix w(other.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
        w.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(support[k]) * std::sqrt(es.eigenvalues()[support[k]]);
    }
    ComplexMatrix inner = w.adjoint() * other * w;
    inner = (0.5 * (inner + inner.adjoint())).eval();
    auto inner_es = hermitian_eigen(inner, false);
    double trace = 0;
    for (double lambda : inner_es.eigenvalues()) {
        trace += std::sqrt(std::max(lambda, 0.0));
    }
    return std::clamp(trace * trace, 0.0, 1.0);
}

}  // namespace telecloning
