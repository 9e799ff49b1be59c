#include "qpoker/circuit/layout.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace qpoker {

LayoutPermutation LayoutPermutation::identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return LayoutPermutation(std::move(m));
}

LayoutPermutation::LayoutPermutation(std::vector<int> mapping) : to_physical_(std::move(mapping)) {
    const int n = static_cast<int>(to_physical_.size());
    to_logical_.assign(to_physical_.size(), -1);
    for (int l = 0; l < n; ++l) {
        const int p = to_physical_[static_cast<std::size_t>(l)];
        if (p < 0 || p >= n || to_logical_[static_cast<std::size_t>(p)] != -1) {
            throw std::invalid_argument("layout is not a bijection");
        }
        to_logical_[static_cast<std::size_t>(p)] = l;
    }
}

bool LayoutPermutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < to_physical_.size(); ++i) {
        if (to_physical_[i] != static_cast<int>(i)) return false;
    }
    return true;
}

void LayoutPermutation::swap_physical(int a, int b) {
    const int la = to_logical_.at(static_cast<std::size_t>(a));
    const int lb = to_logical_.at(static_cast<std::size_t>(b));
    std::swap(to_logical_[static_cast<std::size_t>(a)], to_logical_[static_cast<std::size_t>(b)]);
    to_physical_[static_cast<std::size_t>(la)] = b;
    to_physical_[static_cast<std::size_t>(lb)] = a;
}

}  // namespace qpoker
