#pragma once

#include "qpoker/circuit/circuit.hpp"

namespace qpoker {

// Worked example from the game rules: a five-qubit community register and the
// hand one player ("Max") places on it. The combined state is
// (-|01101> + |11111>) / sqrt(2), worth exactly 4 ones on average.
Circuit example_community();
Circuit example_hand();
Circuit example_showdown();  // community followed by hand

// A known-good qx2 routing of example_showdown(): 9 CX, depth 11, logical
// qubits 2 and 4 exchanged on the device.
Circuit example_showdown_qx2();

}  // namespace qpoker
