#include "qpoker/noisesim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpoker/qcore/simulate.hpp"

namespace qpoker {

using nlohmann::json;

namespace {

// Bounded so pathological noise levels cannot exhaust memory.
constexpr std::size_t kMaxCachedRealizations = 1 << 14;

void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(what + " probability " + std::to_string(p) + " outside [0, 1]");
}

std::vector<double> per_qubit(const json& value, const std::vector<double>& device_rates, int n, const char* key) {
    if (value.is_string()) {
        if (value.get<std::string>() != "device") {
            throw std::invalid_argument(std::string("noise \"") + key + "\" must be \"device\", a number or an array");
        }
        return device_rates;
    }
    if (value.is_number()) return std::vector<double>(static_cast<std::size_t>(n), value.get<double>());
    if (value.is_array()) return value.get<std::vector<double>>();
    throw std::invalid_argument(std::string("noise \"") + key + "\" must be \"device\", a number or an array");
}

void check_conformant(const Circuit& circuit, const DeviceModel& device) {
    if (circuit.num_qubits() != device.num_qubits) {
        throw std::invalid_argument("nonconformant circuit: width " + std::to_string(circuit.num_qubits()) +
                                    " differs from device width " + std::to_string(device.num_qubits));
    }
    for (const auto& g : circuit.ops()) {
        if (arity(g.kind) == 2 && !allowed(device, g.targets[0], g.targets[1])) {
            throw std::invalid_argument("nonconformant circuit: " + std::string(to_string(g.kind)) + "(" +
                                        std::to_string(g.targets[0]) + "," + std::to_string(g.targets[1]) +
                                        ") is not on a coupling edge");
        }
        if (g.kind == GateKind::SWAP) throw std::invalid_argument("nonconformant circuit: SWAP must be decomposed");
    }
}

void append_insertion(Circuit& out, const Gate& cx, PauliPairCode code) {
    const int first = code >> 2;
    const int second = code & 3;
    if (first != 0) out.append(Gate{pauli_gate_kind(first), {cx.targets[0]}, {}, Provenance::noise});
    if (second != 0) out.append(Gate{pauli_gate_kind(second), {cx.targets[1]}, {}, Provenance::noise});
}

// One amplitude-damping trajectory step on every qubit.
void damp_all(StateVector& psi, std::span<const double> damping, Rng& rng) {
    for (int q = 0; q < psi.num_qubits(); ++q) {
        const double p = damping[static_cast<std::size_t>(q)];
        if (p <= 0.0) continue;
        const double jump = p * marginal_one_probabilities(psi)[static_cast<std::size_t>(q)];
        const auto kraus = amplitude_damping_kraus(p);
        psi.apply_operator_and_normalize(uniform01(rng) < jump ? kraus[1] : kraus[0], q);
    }
}

// Op indices sorted by (ASAP layer, position), with the layer boundaries.
struct LayerSchedule {
    std::vector<std::size_t> order;
    std::vector<std::size_t> layer_end;  // exclusive end offsets into order
};

LayerSchedule schedule_layers(const Circuit& circuit) {
    const auto layers = asap_layers(circuit);
    LayerSchedule s;
    s.order.resize(layers.size());
    for (std::size_t i = 0; i < layers.size(); ++i) s.order[i] = i;
    std::stable_sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) { return layers[a] < layers[b]; });
    for (std::size_t k = 0; k < s.order.size(); ++k) {
        if (k + 1 == s.order.size() || layers[s.order[k + 1]] != layers[s.order[k]]) s.layer_end.push_back(k + 1);
    }
    return s;
}

}  // namespace

GateKind pauli_gate_kind(int code) noexcept {
    switch (code & 3) {
        case 1: return GateKind::PauliX;
        case 2: return GateKind::PauliY;
        case 3: return GateKind::PauliZ;
        default: return GateKind::PauliI;
    }
}

NoiseConfig NoiseConfig::from_device(const DeviceModel& device) {
    NoiseConfig n;
    n.cx_pauli = device.cx_error;
    n.readout = device.readout_error;
    return n;
}

NoiseConfig NoiseConfig::ideal(int num_qubits) {
    NoiseConfig n;
    n.readout.assign(static_cast<std::size_t>(num_qubits), 0.0);
    return n;
}

double NoiseConfig::cx_rate(int a, int b) const {
    const auto it = cx_pauli.find(Edge::of(a, b));
    return it == cx_pauli.end() ? 0.0 : it->second;
}

bool NoiseConfig::is_noiseless() const {
    const auto zero = [](double p) { return p == 0.0; };
    const bool cx_zero = std::all_of(cx_pauli.begin(), cx_pauli.end(), [](const auto& kv) { return kv.second == 0.0; });
    const bool damping_zero = !amplitude_damping || std::all_of(amplitude_damping->begin(), amplitude_damping->end(), zero);
    return cx_zero && damping_zero && std::all_of(readout.begin(), readout.end(), zero);
}

void validate(const NoiseConfig& noise, const DeviceModel& device) {
    for (const auto& [e, p] : noise.cx_pauli) {
        check_probability(p, "cx_pauli " + edge_key(e));
        if (std::find(device.edges.begin(), device.edges.end(), e) == device.edges.end()) {
            throw std::invalid_argument("cx_pauli rate given for non-edge " + edge_key(e));
        }
    }
    if (!noise.readout.empty() && static_cast<int>(noise.readout.size()) != device.num_qubits) {
        throw std::invalid_argument("readout noise must list one rate per qubit");
    }
    for (double p : noise.readout) check_probability(p, "readout");
    if (noise.amplitude_damping) {
        if (static_cast<int>(noise.amplitude_damping->size()) != device.num_qubits) {
            throw std::invalid_argument("amplitude_damping must list one rate per qubit");
        }
        for (double p : *noise.amplitude_damping) check_probability(p, "amplitude_damping");
    }
}

NoiseConfig noise_from_json(const json& doc, const DeviceModel& device) {
    NoiseConfig n = NoiseConfig::ideal(device.num_qubits);
    if (doc.is_null()) return n;
    if (!doc.is_object()) throw std::invalid_argument("noise config must be an object");
    try {
        if (doc.contains("cx_pauli")) {
            const auto& v = doc["cx_pauli"];
            if (v.is_string() && v.get<std::string>() == "device") {
                n.cx_pauli = device.cx_error;
            } else if (v.is_number()) {
                for (const auto& e : device.edges) n.cx_pauli[e] = v.get<double>();
            } else if (v.is_object()) {
                for (const auto& [key, p] : v.items()) {
                    const auto dash = key.find('-');
                    if (dash == std::string::npos) throw std::invalid_argument("cx_pauli key \"" + key + "\" is not \"i-j\"");
                    n.cx_pauli[Edge::of(std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1)))] = p.get<double>();
                }
            } else {
                throw std::invalid_argument("noise \"cx_pauli\" must be \"device\", a number or an object");
            }
        }
        if (doc.contains("readout")) n.readout = per_qubit(doc["readout"], device.readout_error, device.num_qubits, "readout");
        if (doc.contains("amplitude_damping") && !doc["amplitude_damping"].is_null()) {
            n.amplitude_damping = per_qubit(doc["amplitude_damping"], {}, device.num_qubits, "amplitude_damping");
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed noise config: ") + e.what());
    }
    validate(n, device);
    return n;
}

json to_json(const NoiseConfig& noise) {
    json doc;
    json cx = json::object();
    for (const auto& [e, p] : noise.cx_pauli) cx[edge_key(e)] = p;
    doc["cx_pauli"] = cx;
    doc["readout"] = noise.readout;
    doc["amplitude_damping"] = noise.amplitude_damping ? json(*noise.amplitude_damping) : json(nullptr);
    return doc;
}

PauliPairCode draw_nonidentity_pauli_pair(Rng& rng) {
    return static_cast<PauliPairCode>(1 + uniform_below(rng, 15));
}

NoiseRealization draw_realization(const Circuit& circuit, const NoiseConfig& noise, Rng& rng) {
    NoiseRealization out;
    const auto ops = circuit.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].kind != GateKind::CX) continue;
        if (bernoulli(rng, noise.cx_rate(ops[i].targets[0], ops[i].targets[1]))) {
            out.push_back({static_cast<std::uint32_t>(i), draw_nonidentity_pauli_pair(rng)});
        }
    }
    return out;
}

Circuit apply_realization(const Circuit& circuit, const NoiseRealization& realization) {
    Circuit out(circuit.num_qubits(), circuit.name());
    auto next = realization.begin();
    const auto ops = circuit.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        out.append(ops[i]);
        while (next != realization.end() && next->op_index == i) {
            append_insertion(out, ops[i], next->code);
            ++next;
        }
    }
    return out;
}

std::uint64_t flip_readout(std::uint64_t bits, std::span<const double> p, Rng& rng) {
    for (std::size_t q = 0; q < p.size(); ++q) {
        if (bernoulli(rng, p[q])) bits ^= std::uint64_t{1} << q;
    }
    return bits;
}

KrausSet amplitude_damping_kraus(double p) {
    check_probability(p, "amplitude damping");
    Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    k1(0, 1) = std::sqrt(p);
    return {k0, k1};
}

Counts sample_noisy(const Circuit& circuit, const DeviceModel& device, const NoiseConfig& noise,
                    std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("shots must be at least 1");
    check_conformant(circuit, device);
    validate(noise, device);

    Rng outcome_rng(seed);
    Rng pauli_rng(fork_seed(seed, 1));
    Rng readout_rng(fork_seed(seed, 2));
    Rng damping_rng(fork_seed(seed, 3));
    const bool any_readout = std::any_of(noise.readout.begin(), noise.readout.end(), [](double p) { return p > 0.0; });
    const bool any_damping = noise.amplitude_damping &&
        std::any_of(noise.amplitude_damping->begin(), noise.amplitude_damping->end(), [](double p) { return p > 0.0; });

    Counts counts(circuit.num_qubits());
    auto record = [&](std::uint64_t outcome) {
        if (any_readout) outcome = flip_readout(outcome, noise.readout, readout_rng);
        counts.add(outcome);
    };

    if (!any_damping) {
        std::map<NoiseRealization, std::vector<double>> cdf_cache;
        for (std::uint64_t s = 0; s < shots; ++s) {
            const NoiseRealization realization = draw_realization(circuit, noise, pauli_rng);
            auto it = cdf_cache.find(realization);
            if (it == cdf_cache.end()) {
                auto cdf = cumulative(run_circuit(apply_realization(circuit, realization)).probabilities());
                if (cdf_cache.size() >= kMaxCachedRealizations) {
                    record(draw_outcome(cdf, outcome_rng));
                    continue;
                }
                it = cdf_cache.emplace(realization, std::move(cdf)).first;
            }
            record(draw_outcome(it->second, outcome_rng));
        }
        return counts;
    }

    const LayerSchedule schedule = schedule_layers(circuit);
    const auto ops = circuit.ops();
    for (std::uint64_t s = 0; s < shots; ++s) {
        const NoiseRealization realization = draw_realization(circuit, noise, pauli_rng);
        StateVector psi(circuit.num_qubits());
        std::size_t k = 0;
        for (std::size_t end : schedule.layer_end) {
            for (; k < end; ++k) {
                const std::size_t op = schedule.order[k];
                psi.apply(ops[op]);
                for (const auto& ins : realization) {
                    if (ins.op_index != op) continue;
                    const int first = ins.code >> 2;
                    const int second = ins.code & 3;
                    if (first) psi.apply(Gate{pauli_gate_kind(first), {ops[op].targets[0]}, {}});
                    if (second) psi.apply(Gate{pauli_gate_kind(second), {ops[op].targets[1]}, {}});
                }
            }
            damp_all(psi, *noise.amplitude_damping, damping_rng);
        }
        const auto cdf = cumulative(psi.probabilities());
        record(draw_outcome(cdf, outcome_rng));
    }
    return counts;
}

std::vector<double> damped_distribution(const Circuit& circuit, std::span<const double> damping) {
    if (static_cast<int>(damping.size()) != circuit.num_qubits()) {
        throw std::invalid_argument("damping must list one rate per qubit");
    }
    const LayerSchedule schedule = schedule_layers(circuit);
    const auto ops = circuit.ops();
    DensityMatrix rho(circuit.num_qubits());
    std::size_t k = 0;
    for (std::size_t end : schedule.layer_end) {
        for (; k < end; ++k) rho.apply_unitary(ops[schedule.order[k]]);
        for (int q = 0; q < circuit.num_qubits(); ++q) {
            const double p = damping[static_cast<std::size_t>(q)];
            if (p > 0.0) rho = apply_channel(rho, amplitude_damping_kraus(p), q);
        }
    }
    return rho.probabilities();
}

}  // namespace qpoker
