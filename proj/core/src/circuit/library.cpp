#include "qpoker/circuit/library.hpp"

#include <numbers>

namespace qpoker {

Circuit example_community() {
    Circuit c(5, "community");
    for (auto g : {Gate::x(0), Gate::x(1), Gate::h(3), Gate::h(4), Gate::z(3), Gate::z(4), Gate::cx(0, 2),
                   Gate::cx(1, 2), Gate::cx(4, 1), Gate::cx(0, 4), Gate::cx(2, 4)}) {
        g.tag = Provenance::community;
        c.append(g);
    }
    return c;
}

Circuit example_hand() {
    Circuit c(5, "max");
    for (auto g : {Gate::x(2), Gate::z(3), Gate::h(3), Gate::cx(2, 3)}) {
        g.tag = Provenance::player;
        c.append(g);
    }
    return c;
}

Circuit example_showdown() {
    Circuit c = compose(example_community(), example_hand());
    c.set_name("max_showdown");
    return c;
}

Circuit example_showdown_qx2() {
    constexpr double pi = std::numbers::pi;
    Circuit c(5, {
        Gate::u3(0, pi, 0, pi), Gate::u3(1, pi, 0, pi), Gate::u2(4, pi, pi),
        Gate::cx(0, 2), Gate::cx(1, 2), Gate::cx(2, 4), Gate::cx(4, 2), Gate::cx(2, 4),
        Gate::cx(2, 1), Gate::cx(0, 2), Gate::cx(4, 2), Gate::u3(4, pi, 0, pi), Gate::cx(4, 3),
    });
    c.set_name("max_qx2");
    return c;
}

}  // namespace qpoker
