#include "qpoker/transpiler/transpiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "qpoker/qcore/simulate.hpp"

namespace qpoker {
namespace {

constexpr double kPi = std::numbers::pi;
// How many upcoming CX gates the SWAP chooser looks at.
constexpr std::size_t kLookahead = 4;

Gate tagged(Gate g, Provenance tag) {
    g.tag = tag;
    return g;
}

Circuit widen(const Circuit& circuit, int width) {
    Circuit out(width, circuit.name());
    for (const auto& g : circuit.ops()) out.append(g);
    return out;
}

struct RoutedAttempt {
    Circuit circuit;
    LayoutPermutation final_layout;
    int swaps = 0;
};

// Greedy SWAP insertion for one initial layout. Returns nullopt as soon as
// the SWAP count exceeds `budget`.
std::optional<RoutedAttempt> route_with_layout(const Circuit& logical, const DeviceModel& device,
                                               const std::vector<std::vector<int>>& dist,
                                               LayoutPermutation layout, int budget) {
    const auto ops = logical.ops();
    std::vector<std::size_t> two_qubit_positions;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (arity(ops[i].kind) == 2) two_qubit_positions.push_back(i);
    }

    Circuit out(device.num_qubits, logical.name());
    int swaps = 0;
    std::size_t next_two_qubit = 0;

    auto d = [&](int p, int q) { return dist[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; };

    // Sum of hop distances of the upcoming CX gates under a candidate layout.
    auto lookahead_cost = [&](const LayoutPermutation& l, std::size_t from) {
        int cost = 0;
        for (std::size_t k = from; k < two_qubit_positions.size() && k < from + kLookahead; ++k) {
            const auto& g = ops[two_qubit_positions[k]];
            cost += d(l.physical(g.targets[0]), l.physical(g.targets[1]));
        }
        return cost;
    };

    // First hop from `from` toward `to` along a shortest path; lowest index wins ties.
    auto next_hop = [&](int from, int to) {
        for (int nb : neighbours(device, from)) {
            if (d(nb, to) == d(from, to) - 1) return nb;
        }
        throw std::logic_error("coupling graph has no path");
    };

    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Gate& g = ops[i];
        if (arity(g.kind) == 1) {
            Gate mapped = g;
            mapped.targets[0] = layout.physical(g.targets[0]);
            out.append(std::move(mapped));
            continue;
        }
        while (true) {
            const int pa = layout.physical(g.targets[0]);
            const int pb = layout.physical(g.targets[1]);
            if (d(pa, pb) <= 1) break;

            const int hop_a = next_hop(pa, pb);
            const int hop_b = next_hop(pb, pa);
            LayoutPermutation move_a = layout;
            move_a.swap_physical(pa, hop_a);
            LayoutPermutation move_b = layout;
            move_b.swap_physical(pb, hop_b);
            const int cost_a = lookahead_cost(move_a, next_two_qubit);
            const int cost_b = lookahead_cost(move_b, next_two_qubit);
            const Edge edge_a = Edge::of(pa, hop_a);
            const Edge edge_b = Edge::of(pb, hop_b);
            const bool take_a = cost_a < cost_b || (cost_a == cost_b && edge_a <= edge_b);
            const Edge chosen = take_a ? edge_a : edge_b;
            out.append(tagged(Gate::swap(chosen.a, chosen.b), g.tag));
            layout = take_a ? std::move(move_a) : std::move(move_b);
            if (++swaps > budget) return std::nullopt;
        }
        Gate mapped = g;
        mapped.targets = {layout.physical(g.targets[0]), layout.physical(g.targets[1])};
        out.append(std::move(mapped));
        ++next_two_qubit;
    }
    return RoutedAttempt{std::move(out), std::move(layout), swaps};
}

}  // namespace

double principal_angle(double angle) {
    double a = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

Circuit decompose_to_basis(const Circuit& circuit) {
    Circuit out(circuit.num_qubits(), circuit.name());
    for (const auto& g : circuit.ops()) {
        const int q = g.targets[0];
        switch (g.kind) {
            case GateKind::X:
            case GateKind::PauliX:
                out.append(tagged(Gate::u3(q, kPi, 0.0, kPi), g.tag));
                break;
            case GateKind::PauliY:
                out.append(tagged(Gate::u3(q, kPi, kPi / 2.0, kPi / 2.0), g.tag));
                break;
            case GateKind::Z:
            case GateKind::PauliZ:
                out.append(tagged(Gate::u1(q, kPi), g.tag));
                break;
            case GateKind::H:
                out.append(tagged(Gate::u2(q, 0.0, kPi), g.tag));
                break;
            case GateKind::PauliI:
                break;
            case GateKind::SWAP: {
                const int a = g.targets[0];
                const int b = g.targets[1];
                out.append(tagged(Gate::cx(a, b), g.tag));
                out.append(tagged(Gate::cx(b, a), g.tag));
                out.append(tagged(Gate::cx(a, b), g.tag));
                break;
            }
            case GateKind::CX:
            case GateKind::U1:
            case GateKind::U2:
            case GateKind::U3:
                out.append(g);
                break;
        }
    }
    return out;
}

TranspileResult route(const Circuit& circuit, const DeviceModel& device, const RouteOptions& options) {
    if (circuit.num_qubits() > device.num_qubits) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) +
                                    " qubits but device " + device.name + " only " +
                                    std::to_string(device.num_qubits));
    }
    const Circuit logical = widen(decompose_to_basis(circuit), device.num_qubits);
    const auto dist = distance_matrix(device);

    std::vector<int> perm(static_cast<std::size_t>(device.num_qubits));
    std::iota(perm.begin(), perm.end(), 0);
    const bool exhaustive = device.num_qubits <= options.exhaustive_layout_limit;

    std::optional<RoutedAttempt> best;
    std::optional<LayoutPermutation> best_initial;
    int best_depth = std::numeric_limits<int>::max();
    do {
        const int budget = best ? best->swaps : std::numeric_limits<int>::max();
        LayoutPermutation initial(perm);
        auto attempt = route_with_layout(logical, device, dist, initial, budget);
        if (attempt) {
            const int attempt_depth = depth(decompose_to_basis(attempt->circuit));
            // Fewer SWAPs first, then shallower; the lexicographically first layout wins ties.
            if (!best || attempt->swaps < best->swaps ||
                (attempt->swaps == best->swaps && attempt_depth < best_depth)) {
                best = std::move(attempt);
                best_initial = std::move(initial);
                best_depth = attempt_depth;
            }
        }
    } while (exhaustive && std::next_permutation(perm.begin(), perm.end()));

    TranspileResult result{decompose_to_basis(best->circuit), *best_initial, best->final_layout, {}};
    result.stats.swaps_inserted = best->swaps;
    result.stats.cx_count = count_cx(result.circuit);
    result.stats.depth = depth(result.circuit);
    return result;
}

U3Angles extract_u3_angles(const Eigen::Matrix2cd& u) {
    constexpr double eps = 1e-12;
    const double c = std::abs(u(0, 0));
    const double s = std::abs(u(1, 0));
    U3Angles out;
    out.theta = 2.0 * std::atan2(s, c);
    if (c > eps) {
        out.global_phase = std::arg(u(0, 0));
        if (s > eps) {
            out.phi = std::arg(u(1, 0)) - out.global_phase;
            out.lambda = std::arg(-u(0, 1)) - out.global_phase;
        } else {
            out.phi = 0.0;
            out.lambda = std::arg(u(1, 1)) - out.global_phase;
        }
    } else {
        out.global_phase = std::arg(-u(0, 1));
        out.lambda = 0.0;
        out.phi = std::arg(u(1, 0)) - out.global_phase;
    }
    out.theta = principal_angle(out.theta);
    out.phi = principal_angle(out.phi);
    out.lambda = principal_angle(out.lambda);
    out.global_phase = principal_angle(out.global_phase);
    return out;
}

bool matrices_equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    // Phase from the largest-magnitude entry of b.
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) < tol) return a.cwiseAbs().maxCoeff() < tol;
    if (std::abs(a(r, c)) < tol) return false;
    const Complex phase = a(r, c) / b(r, c);
    const Complex unit = phase / std::abs(phase);
    return (a - unit * b).cwiseAbs().maxCoeff() <= tol;
}

Circuit merge_single_qubit(const Circuit& circuit) {
    struct Run {
        Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
        std::vector<Gate> gates;
    };
    std::vector<Run> pending(static_cast<std::size_t>(circuit.num_qubits()));
    Circuit out(circuit.num_qubits(), circuit.name());

    auto flush = [&](int q) {
        Run& run = pending[static_cast<std::size_t>(q)];
        if (run.gates.size() == 1) {
            out.append(run.gates.front());
        } else if (run.gates.size() >= 2) {
            const bool identity = std::abs(std::abs(run.matrix.trace()) / 2.0 - 1.0) < 1e-12;
            if (!identity) {
                const auto angles = extract_u3_angles(run.matrix);
                Gate merged = Gate::u3(q, angles.theta, angles.phi, angles.lambda);
                const Provenance first_tag = run.gates.front().tag;
                const bool same_tag = std::all_of(run.gates.begin(), run.gates.end(),
                                                  [&](const Gate& g) { return g.tag == first_tag; });
                merged.tag = same_tag ? first_tag : Provenance::none;
                out.append(std::move(merged));
            }
        }
        run = Run{};
    };

    for (const auto& g : circuit.ops()) {
        if (arity(g.kind) == 1) {
            if (g.kind == GateKind::PauliI) continue;
            Run& run = pending[static_cast<std::size_t>(g.targets[0])];
            run.matrix = single_qubit_matrix(g) * run.matrix;
            run.gates.push_back(g);
            continue;
        }
        for (int t : g.targets) flush(t);
        out.append(g);
    }
    for (int q = 0; q < circuit.num_qubits(); ++q) flush(q);
    return out;
}

TranspileResult transpile(const Circuit& circuit, const DeviceModel& device, const RouteOptions& options) {
    TranspileResult routed = route(circuit, device, options);
    routed.circuit = merge_single_qubit(routed.circuit);
    routed.stats.cx_count = count_cx(routed.circuit);
    routed.stats.depth = depth(routed.circuit);
    return routed;
}

double routed_fidelity(const Circuit& logical, const TranspileResult& result) {
    const int width = result.circuit.num_qubits();
    const StateVector ideal = run_circuit(widen(logical, width));
    const StateVector expected = permute_qubits(ideal, result.final_layout.mapping());
    return fidelity(run_circuit(result.circuit), expected);
}

bool is_device_conformant(const Circuit& circuit, const DeviceModel& device) {
    if (circuit.num_qubits() > device.num_qubits) return false;
    for (const auto& g : circuit.ops()) {
        if (arity(g.kind) == 2 && !allowed(device, g.targets[0], g.targets[1])) return false;
    }
    return true;
}

}  // namespace qpoker
