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

#ifndef TELECLONING_PROTOCOL_H
#define TELECLONING_PROTOCOL_H

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "telecloning/heisenberg_qcm.h"
#include "telecloning/qstate.h"
#include "telecloning/sampling.h"

/// 1->2 telecloning by Bell measurements and Pauli-triple corrections.
///
/// Register layouts (each block n qubits, big-endian, index i = 1..n):
///
///     channel          A'_1..A'_n  B_1..B_n  C_1..C_n  a_1..a_n
///     total            A_1..A_n    A'  B  C  a
///     after measuring  B  C  a
///
/// Sender i measures the pair (A_i, A'_i) with A_i as the left qubit of the
/// Bell vector. An optional reference register R can precede A; it is never
/// touched and survives at the front of the collapsed state.
namespace telecloning {

/// Channel amplitude scale. `PowerOfTwo` reproduces the unnormalized 1/2^n
/// scale and only exists as a negative control for the verification suite.
enum class ChannelPrefactor { Normalized, PowerOfTwo };

struct ChannelState {
    StateVector state;
    CloneParams params;
};

/// 2^{-n/2} sum_k |k>_{A'} |eta_k>_{B,C,anc}.
ChannelState build_channel(const CloneParams &params, ChannelPrefactor prefactor = ChannelPrefactor::Normalized);

/// Qubit labels ("A1", "A'1", "B1", ..., "a1", ...) in register order.
std::vector<std::string> channel_register_labels(std::size_t n);
std::vector<std::string> total_register_labels(std::size_t n);
std::vector<std::string> collapsed_register_labels(std::size_t n);

/// psi_A (x) channel over 5n qubits.
StateVector attach_input(const StateVector &psi, const ChannelState &channel);

struct BellOutcome {
    std::vector<BellElement> pairs;

    friend bool operator==(const BellOutcome &, const BellOutcome &) = default;

    std::size_t size() const { return pairs.size(); }
    /// Comma-separated, e.g. "PHI+,PSI-".
    std::string to_string() const;
    static BellOutcome parse(const std::string &text);
    static BellOutcome all_phi_plus(std::size_t n);

    /// Two bits per pair: kind (0 = PHI, 1 = PSI) then parity (0 = +, 1 = -).
    std::vector<int> classical_bits() const;
    static BellOutcome from_classical_bits(std::span<const int> bits);

    /// All 4^n outcomes, pair 1 varying slowest, elements in BellElement::all() order.
    static std::vector<BellOutcome> enumerate(std::size_t n);
};

struct ForcedOutcome {
    BellOutcome outcome;
};
struct SampledOutcome {
    std::uint64_t seed = 0;
};
using MeasurementMode = std::variant<ForcedOutcome, SampledOutcome>;

struct SenderMeasurement {
    BellOutcome outcome;
    /// Renormalized state over (R, B, C, anc).
    StateVector collapsed;
    /// Joint probability of `outcome`.
    double probability = 0;
};

/// Projects every (A_i, A'_i) pair of `total`.
///
/// `order` lists 0-based pair indices in measurement order; empty means
/// 1..n. Forced outcomes below probability 1e-15 raise ImpossibleOutcome.
SenderMeasurement measure_senders(
    const StateVector &total,
    std::size_t n,
    const MeasurementMode &mode,
    std::size_t reference_qubits = 0,
    std::span<const std::size_t> order = {});

/// Sampled measurement driven by a caller-owned generator.
SenderMeasurement measure_senders(const StateVector &total, std::size_t n, Rng &rng, std::size_t reference_qubits = 0);

struct Correction {
    Pauli op = Pauli::I;
    /// 0-based pair index; the operator acts on B_{pair+1}, C_{pair+1}, a_{pair+1}.
    std::size_t pair = 0;

    friend bool operator==(const Correction &, const Correction &) = default;

    std::vector<std::string> target_labels() const;
};

/// X triples for every PSI pair, then Z triples for every minus-parity pair.
std::vector<Correction> correction_plan(const BellOutcome &outcome);

/// Applies `plan` in order to a (B, C, anc) block starting at `offset`.
StateVector apply_corrections(
    const StateVector &state, std::span<const Correction> plan, const CloneParams &params, std::size_t offset = 0);

struct ProtocolTranscript {
    BellOutcome outcome;
    double probability = 0;
    std::vector<int> classical_bits;
    std::vector<Correction> corrections;
    /// Corrected state over (B, C, anc), or (R, B, C, anc) with a reference.
    StateVector final_state;
    double fidelity_b = 0;
    double fidelity_c = 0;
    /// |<omega|final>|^2 with omega = sum_j alpha_j |eta_j>.
    double target_overlap = 0;
};

ProtocolTranscript run(const StateVector &psi, const CloneParams &params, const MeasurementMode &mode);
/// Reuses a prebuilt channel; `channel.params` must match psi.
ProtocolTranscript run(const StateVector &psi, const ChannelState &channel, const MeasurementMode &mode);

/// Telecloning of the A part of `joint`, laid out (R, A) with R of
/// `reference_qubits` qubits. Returns the measured outcome and the corrected
/// (R, B, C, anc) state; fidelities and overlap are left at zero.
ProtocolTranscript teleclone_with_reference(
    const StateVector &joint, std::size_t reference_qubits, const ChannelState &channel, const MeasurementMode &mode);

/// 1/2 sum_j |j>_{R} |j>_{A} for n = 2: a two-qubit input maximally entangled
/// with a four-level reference, laid out (R, A).
StateVector maximally_entangled_reference(std::size_t n);

/// Entropy of the reference register R across the (R | B, C, anc) cut after
/// telecloning the A half of `joint` (laid out (R, A), R of n qubits).
double entanglement_cost_check(const StateVector &joint, const CloneParams &params, const MeasurementMode &mode);
/// Same for maximally_entangled_reference(params.n()).
double entanglement_cost_check(const CloneParams &params, const MeasurementMode &mode);

nlohmann::json to_json(const ProtocolTranscript &transcript, const CloneParams &params);

}  // namespace telecloning

#endif
