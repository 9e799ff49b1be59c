#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qpoker {

// Unordered qubit pair, stored with first < second.
struct Edge {
    int a = 0;
    int b = 0;

    static Edge of(int x, int y) { return x < y ? Edge{x, y} : Edge{y, x}; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string edge_key(const Edge& e);  // "i-j"

// Coupling graph plus per-edge CX error, per-qubit readout and single-qubit
// error rates. Immutable once loaded.
struct DeviceModel {
    std::string name;
    int num_qubits = 0;
    std::vector<Edge> edges;
    std::map<Edge, double> cx_error;
    std::vector<double> readout_error;
    std::vector<double> single_qubit_error;

    double edge_error(int x, int y) const;
    double mean_cx_error() const;
    double mean_single_qubit_error() const;
};

// Parses and validates the JSON device config:
//   {"name", "n", "edges": [[i,j]...], "cx_error": {"i-j": p}, "readout_error": [..], "single_qubit_error": [..]}
// Throws std::invalid_argument on dangling edges, rates outside [0,1] or a disconnected graph.
DeviceModel load_device(std::string_view config_text);
DeviceModel device_from_json(const nlohmann::json& doc);
DeviceModel load_device_file(const std::filesystem::path& path);
nlohmann::json to_json(const DeviceModel& device);

// Throws std::invalid_argument if any invariant is broken.
void validate(const DeviceModel& device);

// True iff {control, target} is a bus-resonator edge. CX is allowed in both
// directions. Throws for out-of-range or equal indices.
bool allowed(const DeviceModel& device, int control, int target);

// All-pairs hop distances on the coupling graph (BFS).
std::vector<std::vector<int>> distance_matrix(const DeviceModel& device);

// Neighbours of a qubit in ascending index order.
std::vector<int> neighbours(const DeviceModel& device, int qubit);

// Bundled example configs. Rates are illustrative; the topologies are those
// of the 5-qubit QX2 (6 edges) and ourense (4 edges) devices.
const DeviceModel& qx2_device();
const DeviceModel& ourense_device();
std::string_view qx2_config_text();
std::string_view ourense_config_text();

// Copy of `device` with every rate set to zero (ideal backend).
DeviceModel noiseless(DeviceModel device);

}  // namespace qpoker
