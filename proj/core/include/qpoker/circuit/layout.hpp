#pragma once

#include <span>
#include <vector>

namespace qpoker {

// Bijection logical qubit -> physical qubit over {0..n-1}.
class LayoutPermutation {
public:
    static LayoutPermutation identity(int n);
    // Throws std::invalid_argument unless mapping is a bijection on {0..n-1}.
    explicit LayoutPermutation(std::vector<int> mapping);

    int size() const noexcept { return static_cast<int>(to_physical_.size()); }
    int physical(int logical) const { return to_physical_.at(logical); }
    int logical(int physical) const { return to_logical_.at(physical); }
    std::span<const int> mapping() const noexcept { return to_physical_; }
    bool is_identity() const noexcept;

    // Exchanges the logical qubits sitting on two physical positions.
    void swap_physical(int a, int b);

    friend bool operator==(const LayoutPermutation&, const LayoutPermutation&) = default;

private:
    std::vector<int> to_physical_;
    std::vector<int> to_logical_;
};

}  // namespace qpoker
