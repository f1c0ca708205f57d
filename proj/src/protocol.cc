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

#include "telecloning/protocol.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace telecloning {

namespace {

void append_block(std::vector<std::string> &out, const std::string &prefix, std::size_t n) {
    for (std::size_t i = 1; i <= n; ++i) {
        out.push_back(prefix + std::to_string(i));
    }
}

BellElement draw_element(const StateVector &state, QubitIndex a, QubitIndex b, Rng &rng) {
    double u = rng.uniform();
    double cumulative = 0;
    BellElement chosen = BellElement::all().back();
    bool found = false;
    for (auto e : BellElement::all()) {
        double prob = bell_probability(state, a, b, e);
        cumulative += prob;
        if (!found && u < cumulative) {
            chosen = e;
            found = true;
        }
    }
    if (!found) {
        // u fell in the roundoff gap above the summed probabilities; take the
        // last element that can actually occur.
        for (auto e : BellElement::all()) {
            if (bell_probability(state, a, b, e) > 1e-15) {
                chosen = e;
            }
        }
    }
    return chosen;
}

SenderMeasurement measure_impl(
    const StateVector &total,
    std::size_t n,
    const BellOutcome *forced,
    Rng *rng,
    std::size_t reference_qubits,
    std::span<const std::size_t> order) {
    if (total.num_qubits() != reference_qubits + 5 * n) {
        throw std::invalid_argument(
            "measure_senders: expected " + std::to_string(reference_qubits + 5 * n) + " qubits, got " +
            std::to_string(total.num_qubits()));
    }
    if (forced != nullptr && forced->size() != n) {
        throw std::invalid_argument("measure_senders: forced outcome has " + std::to_string(forced->size()) + " pairs");
    }
    std::vector<std::size_t> sequence(order.begin(), order.end());
    if (sequence.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            sequence.push_back(i);
        }
    }
    {
        auto sorted = sequence;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted.size() != n || sorted[i] != i) {
                throw std::invalid_argument("measure_senders: order is not a permutation of the pairs");
            }
        }
    }

    // labels[k] = original position of the qubit currently at position k.
    std::vector<std::size_t> labels(total.num_qubits());
    for (std::size_t k = 0; k < labels.size(); ++k) {
        labels[k] = k;
    }
    auto current = [&](std::size_t original) {
        auto it = std::find(labels.begin(), labels.end(), original);
        return QubitIndex{static_cast<std::size_t>(it - labels.begin())};
    };

    SenderMeasurement result;
    result.outcome.pairs.assign(n, BellElement{});
    result.probability = 1.0;
    StateVector state = total;
    for (std::size_t pair : sequence) {
        QubitIndex a = current(reference_qubits + pair);
        QubitIndex a_prime = current(reference_qubits + n + pair);
        BellElement element = forced != nullptr ? forced->pairs[pair] : draw_element(state, a, a_prime, *rng);
        auto projection = bell_project(state, a, a_prime, element);
        result.outcome.pairs[pair] = element;
        result.probability *= projection.probability;
        state = std::move(projection.residual);
        labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(std::max(a.position, a_prime.position)));
        labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(std::min(a.position, a_prime.position)));
    }
    if (forced != nullptr && result.probability < 1e-15) {
        throw ImpossibleOutcome("measure_senders: outcome " + forced->to_string() + " is impossible");
    }
    result.collapsed = std::move(state);
    return result;
}

}  // namespace

ChannelState build_channel(const CloneParams &params, ChannelPrefactor prefactor) {
    const std::size_t n = params.n();
    if (4 * n > kMaxQubits) {
        throw std::invalid_argument("build_channel: 4n qubits exceeds the dense limit");
    }
    const std::size_t block = std::size_t{1} << (3 * n);
    const double scale = prefactor == ChannelPrefactor::Normalized
                             ? std::pow(2.0, -0.5 * static_cast<double>(n))
                             : std::pow(2.0, -static_cast<double>(n));
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(block << n));
    for (std::size_t k = 0; k < params.d(); ++k) {
        v.segment(static_cast<Eigen::Index>(k * block), static_cast<Eigen::Index>(block)) =
            scale * eta_state(k, params).amplitudes();
    }
    return {StateVector(std::move(v)), params};
}

std::vector<std::string> channel_register_labels(std::size_t n) {
    std::vector<std::string> out;
    append_block(out, "A'", n);
    append_block(out, "B", n);
    append_block(out, "C", n);
    append_block(out, "a", n);
    return out;
}

std::vector<std::string> total_register_labels(std::size_t n) {
    std::vector<std::string> out;
    append_block(out, "A", n);
    auto rest = channel_register_labels(n);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

std::vector<std::string> collapsed_register_labels(std::size_t n) {
    std::vector<std::string> out;
    append_block(out, "B", n);
    append_block(out, "C", n);
    append_block(out, "a", n);
    return out;
}

StateVector attach_input(const StateVector &psi, const ChannelState &channel) {
    if (psi.num_qubits() != channel.params.n()) {
        throw std::invalid_argument(
            "attach_input: input has " + std::to_string(psi.num_qubits()) + " qubits, channel expects " +
            std::to_string(channel.params.n()));
    }
    return tensor(psi, channel.state);
}

std::string BellOutcome::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += pairs[i].name();
    }
    return out;
}

BellOutcome BellOutcome::parse(const std::string &text) {
    BellOutcome out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
        std::transform(item.begin(), item.end(), item.begin(), [](unsigned char c) { return std::toupper(c); });
        out.pairs.push_back(BellElement::parse(item));
    }
    if (out.pairs.empty()) {
        throw std::invalid_argument("empty Bell outcome");
    }
    return out;
}

BellOutcome BellOutcome::all_phi_plus(std::size_t n) {
    return BellOutcome{std::vector<BellElement>(n, BellElement{BellKind::Phi, Parity::Plus})};
}

std::vector<int> BellOutcome::classical_bits() const {
    std::vector<int> bits;
    bits.reserve(2 * pairs.size());
    for (auto e : pairs) {
        bits.push_back(e.kind == BellKind::Psi ? 1 : 0);
        bits.push_back(e.parity == Parity::Minus ? 1 : 0);
    }
    return bits;
}

BellOutcome BellOutcome::from_classical_bits(std::span<const int> bits) {
    if (bits.size() % 2 != 0) {
        throw std::invalid_argument("classical bit string has odd length");
    }
    BellOutcome out;
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        out.pairs.push_back({bits[i] ? BellKind::Psi : BellKind::Phi, bits[i + 1] ? Parity::Minus : Parity::Plus});
    }
    return out;
}

std::vector<BellOutcome> BellOutcome::enumerate(std::size_t n) {
    std::vector<BellOutcome> out;
    const std::size_t count = std::size_t{1} << (2 * n);
    out.reserve(count);
    const auto elements = BellElement::all();
    for (std::size_t code = 0; code < count; ++code) {
        BellOutcome o;
        for (std::size_t i = 0; i < n; ++i) {
            o.pairs.push_back(elements[(code >> (2 * (n - 1 - i))) & 3]);
        }
        out.push_back(std::move(o));
    }
    return out;
}

SenderMeasurement measure_senders(
    const StateVector &total,
    std::size_t n,
    const MeasurementMode &mode,
    std::size_t reference_qubits,
    std::span<const std::size_t> order) {
    if (const auto *forced = std::get_if<ForcedOutcome>(&mode)) {
        return measure_impl(total, n, &forced->outcome, nullptr, reference_qubits, order);
    }
    Rng rng(std::get<SampledOutcome>(mode).seed);
    return measure_impl(total, n, nullptr, &rng, reference_qubits, order);
}

SenderMeasurement measure_senders(const StateVector &total, std::size_t n, Rng &rng, std::size_t reference_qubits) {
    return measure_impl(total, n, nullptr, &rng, reference_qubits, {});
}

std::vector<std::string> Correction::target_labels() const {
    std::string i = std::to_string(pair + 1);
    return {"B" + i, "C" + i, "a" + i};
}

std::vector<Correction> correction_plan(const BellOutcome &outcome) {
    std::vector<Correction> plan;
    for (std::size_t i = 0; i < outcome.size(); ++i) {
        if (outcome.pairs[i].kind == BellKind::Psi) {
            plan.push_back({Pauli::X, i});
        }
    }
    for (std::size_t i = 0; i < outcome.size(); ++i) {
        if (outcome.pairs[i].parity == Parity::Minus) {
            plan.push_back({Pauli::Z, i});
        }
    }
    return plan;
}

StateVector apply_corrections(
    const StateVector &state, std::span<const Correction> plan, const CloneParams &params, std::size_t offset) {
    StateVector out = state;
    for (const auto &c : plan) {
        out = apply_triple(out, c.op, c.pair, params, offset);
    }
    return out;
}

ProtocolTranscript teleclone_with_reference(
    const StateVector &joint, std::size_t reference_qubits, const ChannelState &channel, const MeasurementMode &mode) {
    const auto &params = channel.params;
    if (joint.num_qubits() != reference_qubits + params.n()) {
        throw std::invalid_argument("teleclone_with_reference: joint state has the wrong number of qubits");
    }
    StateVector total = tensor(joint, channel.state);
    auto measured = measure_senders(total, params.n(), mode, reference_qubits);

    ProtocolTranscript t;
    t.outcome = measured.outcome;
    t.probability = measured.probability;
    t.classical_bits = measured.outcome.classical_bits();
    // The plan is rebuilt from the broadcast bits alone.
    t.corrections = correction_plan(BellOutcome::from_classical_bits(t.classical_bits));
    t.final_state = apply_corrections(measured.collapsed, t.corrections, params, reference_qubits);
    return t;
}

ProtocolTranscript run(const StateVector &psi, const ChannelState &channel, const MeasurementMode &mode) {
    const auto &params = channel.params;
    if (psi.num_qubits() != params.n()) {
        throw std::invalid_argument("run: input qubit count does not match the clone parameters");
    }
    if (!psi.is_normalized(1e-6)) {
        throw std::invalid_argument("run: input state is not normalized");
    }
    ProtocolTranscript t = teleclone_with_reference(psi, 0, channel, mode);
    auto rho_b = reduced_density(t.final_state, clone_register(Side::B, params));
    auto rho_c = reduced_density(t.final_state, clone_register(Side::C, params));
    t.fidelity_b = rho_b.expectation(psi);
    t.fidelity_c = rho_c.expectation(psi);
    t.target_overlap = target_state(psi, params).overlap(t.final_state);
    return t;
}

ProtocolTranscript run(const StateVector &psi, const CloneParams &params, const MeasurementMode &mode) {
    return run(psi, build_channel(params), mode);
}

StateVector maximally_entangled_reference(std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
    for (std::size_t j = 0; j < d; ++j) {
        v[static_cast<Eigen::Index>(j * d + j)] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return StateVector(std::move(v));
}

double entanglement_cost_check(const StateVector &joint, const CloneParams &params, const MeasurementMode &mode) {
    auto t = teleclone_with_reference(joint, params.n(), build_channel(params), mode);
    return von_neumann_entropy(reduced_density(t.final_state, qubit_range(0, params.n())));
}

double entanglement_cost_check(const CloneParams &params, const MeasurementMode &mode) {
    return entanglement_cost_check(maximally_entangled_reference(params.n()), params, mode);
}

nlohmann::json to_json(const ProtocolTranscript &transcript, const CloneParams &params) {
    nlohmann::json corrections = nlohmann::json::array();
    for (const auto &c : transcript.corrections) {
        corrections.push_back({{"op", std::string(1, pauli_name(c.op))}, {"targets", c.target_labels()}});
    }
    std::string bits;
    for (int b : transcript.classical_bits) {
        bits += b ? '1' : '0';
    }
    return {
        {"n", params.n()},
        {"p", params.p()},
        {"q", params.q()},
        {"outcome", transcript.outcome.to_string()},
        {"probability", transcript.probability},
        {"classical_bits", bits},
        {"corrections", corrections},
        {"final_register", collapsed_register_labels(params.n())},
        {"final_norm", transcript.final_state.norm_squared()},
        {"target_overlap", transcript.target_overlap},
        {"fidelity_B", transcript.fidelity_b},
        {"fidelity_C", transcript.fidelity_c},
    };
}

}  // namespace telecloning
