#pragma once

#include <Eigen/Dense>

#include "qpoker/circuit/circuit.hpp"
#include "qpoker/circuit/layout.hpp"
#include "qpoker/device/device_model.hpp"
#include "qpoker/qcore/state_vector.hpp"

namespace qpoker {

struct TranspileStats {
    int cx_count = 0;
    int depth = 0;
    int swaps_inserted = 0;
};

// A device-width circuit over {U1, U2, U3, CX} plus the layouts that relate
// it to the logical circuit it came from.
struct TranspileResult {
    Circuit circuit;
    LayoutPermutation initial_layout;
    LayoutPermutation final_layout;
    TranspileStats stats;
};

// Exact rewrite into {U1, U2, U3, CX}; SWAP becomes three CX, identities vanish.
Circuit decompose_to_basis(const Circuit& circuit);

struct RouteOptions {
    // Try every initial placement (device.n! of them) and keep the cheapest.
    // Only used when the device has at most this many qubits.
    int exhaustive_layout_limit = 8;
};

// Inserts SWAPs so every CX sits on a coupling edge. The input is first
// decomposed to the basis. Throws std::invalid_argument when the circuit is
// wider than the device.
TranspileResult route(const Circuit& circuit, const DeviceModel& device, const RouteOptions& options = {});

// Collapses every run of two or more adjacent single-qubit gates on one wire
// into a single U3 (dropped when the run is the identity up to phase).
Circuit merge_single_qubit(const Circuit& circuit);

// decompose_to_basis -> route -> merge_single_qubit.
TranspileResult transpile(const Circuit& circuit, const DeviceModel& device, const RouteOptions& options = {});

// ZYZ extraction: U = e^{i alpha} U3(theta, phi, lambda), angles in (-pi, pi].
struct U3Angles {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
    double global_phase = 0.0;
};
U3Angles extract_u3_angles(const Eigen::Matrix2cd& u);

// Wraps an angle into (-pi, pi].
double principal_angle(double angle);

// True iff a and b agree up to a global phase within tol (entrywise).
bool matrices_equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol);

// Pads the logical circuit to the device width, simulates both from |0..0>
// and compares after relabelling logical qubits through final_layout.
double routed_fidelity(const Circuit& logical, const TranspileResult& result);

// Every CX of `circuit` lies on a coupling edge.
bool is_device_conformant(const Circuit& circuit, const DeviceModel& device);

}  // namespace qpoker
