#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qpoker/circuit/circuit.hpp"
#include "qpoker/device/device_model.hpp"
#include "qpoker/qcore/density_matrix.hpp"
#include "qpoker/qcore/sampling.hpp"

namespace qpoker {

// Two-qubit Pauli code 0..15: (first << 2) | second with 0=I, 1=X, 2=Y, 3=Z.
// `first` acts on the CX control, `second` on the target. Code 0 is I (x) I.
using PauliPairCode = std::uint8_t;
GateKind pauli_gate_kind(int code) noexcept;  // 0..3 -> PauliI/X/Y/Z

// Stochastic noise applied while executing a device-conformant circuit.
struct NoiseConfig {
    // Probability of a uniformly drawn non-identity two-qubit Pauli right after
    // each CX on the edge.
    std::map<Edge, double> cx_pauli;
    // Per-qubit measurement bit-flip probability.
    std::vector<double> readout;
    // Optional per-qubit amplitude-damping probability applied after every
    // ASAP layer of the circuit.
    std::optional<std::vector<double>> amplitude_damping;

    // Rates copied from the device (cx_pauli = cx_error, readout = readout_error).
    static NoiseConfig from_device(const DeviceModel& device);
    static NoiseConfig ideal(int num_qubits);

    double cx_rate(int a, int b) const;
    bool is_noiseless() const;
};

// Throws std::invalid_argument if a probability is outside [0,1] or the
// per-qubit vectors do not match the device width.
void validate(const NoiseConfig& noise, const DeviceModel& device);

// JSON form, embedded in experiment configs. Every key is optional; absent keys mean zero noise.
//   {"cx_pauli": "device" | number | {"i-j": p},
//    "readout": "device" | number | [p...],
//    "amplitude_damping": number | [p...] | null}
NoiseConfig noise_from_json(const nlohmann::json& doc, const DeviceModel& device);
nlohmann::json to_json(const NoiseConfig& noise);

// One Pauli error inserted after the CX at position `op_index`.
struct PauliInsertion {
    std::uint32_t op_index = 0;
    PauliPairCode code = 0;
    friend auto operator<=>(const PauliInsertion&, const PauliInsertion&) = default;
};
using NoiseRealization = std::vector<PauliInsertion>;

// Draws the stochastic Pauli insertions for one execution of the circuit.
NoiseRealization draw_realization(const Circuit& circuit, const NoiseConfig& noise, Rng& rng);

// Uniform draw from the 15 non-identity two-qubit Paulis.
PauliPairCode draw_nonidentity_pauli_pair(Rng& rng);

// Circuit with the realization's Pauli gates (tagged noise) spliced in.
Circuit apply_realization(const Circuit& circuit, const NoiseRealization& realization);

// Flips bit q of `bits` with probability p[q], independently.
std::uint64_t flip_readout(std::uint64_t bits, std::span<const double> p, Rng& rng);

// K0 = diag(1, sqrt(1-p)), K1 = sqrt(p) |0><1|. Throws for p outside [0,1].
KrausSet amplitude_damping_kraus(double p);

// Executes `shots` noisy runs and returns the readout histogram.
//
// Random streams: outcome draws use Rng(seed), exactly as sample() would, so
// a noiseless config reproduces sample(run_circuit(circuit), shots, Rng(seed)).
// Pauli insertions and readout flips draw from streams forked off the seed.
// Throws std::invalid_argument if a CX is not on a coupling edge.
Counts sample_noisy(const Circuit& circuit, const DeviceModel& device, const NoiseConfig& noise,
                    std::uint64_t shots, std::uint64_t seed);

// Exact output distribution with amplitude damping (no Pauli or readout noise),
// evolved as a density matrix layer by layer. Reference for the trajectory sampler.
std::vector<double> damped_distribution(const Circuit& circuit, std::span<const double> damping);

}  // namespace qpoker
