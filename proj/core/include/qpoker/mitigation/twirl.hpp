#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>

#include "qpoker/circuit/circuit.hpp"
#include "qpoker/device/device_model.hpp"
#include "qpoker/qcore/types.hpp"

namespace qpoker {

// Paulis are indexed 0=I, 1=X, 2=Y, 3=Z throughout.
//
// (a, b) are applied to (control, target) before the CX and (c, d) after, so
// that (c (x) d) CX (a (x) b) equals CX up to a global phase.
struct TwirlRow {
    int a = 0, b = 0, c = 0, d = 0;
    friend bool operator==(const TwirlRow&, const TwirlRow&) = default;
};

const std::array<TwirlRow, 16>& twirl_table();

Eigen::Matrix2cd pauli_matrix(int index);
// Two-qubit operator with basis bit 0 on the control and bit 1 on the target.
Eigen::Matrix4cd pauli_pair_matrix(int on_control, int on_target);
Eigen::Matrix4cd cx_matrix();

struct TwirlCheck {
    bool ok = false;
    double phase = 0.0;      // theta in (-pi, pi]
    double max_error = 0.0;  // largest entrywise deviation after removing the phase
};

// Checks sigma_c (x) sigma_d == e^{i theta} CX (sigma_a (x) sigma_b) CX^dagger.
TwirlCheck verify_twirl_row(const TwirlRow& row, double tolerance = 1e-12);

// Surrounds every CX with a uniformly drawn row of the twirl table.
// Identity factors are omitted; inserted gates carry Provenance::twirl.
Circuit twirl_cx(const Circuit& circuit, Rng& rng);

// After every CX on edge e, inserts with probability (r - 1) * eps[e] one of the
// 15 non-identity two-qubit Paulis, uniformly. Inserted gates carry
// Provenance::noise. Throws std::invalid_argument for r < 1 or when
// (r - 1) * eps exceeds 1 on an edge the circuit uses.
Circuit amplify_noise(const Circuit& circuit, const std::map<Edge, double>& eps, double r, Rng& rng);
Circuit amplify_noise(const Circuit& circuit, const DeviceModel& device, double r, Rng& rng);

}  // namespace qpoker
