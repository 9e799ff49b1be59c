#include "qpoker/qcore/types.hpp"

#include <stdexcept>

namespace qpoker {

std::string bit_string(std::uint64_t index, int num_qubits) {
    std::string out(static_cast<std::size_t>(num_qubits), '0');
    for (int k = 0; k < num_qubits; ++k) {
        if ((index >> k) & 1U) out[static_cast<std::size_t>(num_qubits - 1 - k)] = '1';
    }
    return out;
}

std::uint64_t parse_bit_string(const std::string& bits) {
    if (bits.empty() || bits.size() > 64) throw std::invalid_argument("malformed bit string '" + bits + "'");
    std::uint64_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("malformed bit string '" + bits + "'");
        value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

}  // namespace qpoker
