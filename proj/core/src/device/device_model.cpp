#include "qpoker/device/device_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qpoker {

using nlohmann::json;

namespace {

constexpr std::string_view kQx2Config = R"({
  "name": "qx2",
  "n": 5,
  "edges": [[0, 1], [0, 2], [1, 2], [2, 3], [2, 4], [3, 4]],
  "cx_error": {"0-1": 0.02, "0-2": 0.02, "1-2": 0.02, "2-3": 0.02, "2-4": 0.02, "3-4": 0.02},
  "readout_error": [0.03, 0.03, 0.03, 0.03, 0.03],
  "single_qubit_error": [0.002, 0.002, 0.002, 0.002, 0.002]
})";

constexpr std::string_view kOurenseConfig = R"({
  "name": "ourense",
  "n": 5,
  "edges": [[0, 1], [1, 2], [1, 3], [3, 4]],
  "cx_error": {"0-1": 0.015, "1-2": 0.015, "1-3": 0.015, "3-4": 0.015},
  "readout_error": [0.05, 0.05, 0.05, 0.05, 0.05],
  "single_qubit_error": [0.0015, 0.0015, 0.0015, 0.0015, 0.0015]
})";

void check_rate(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(what + " rate " + std::to_string(p) + " outside [0, 1]");
}

void check_index(const DeviceModel& d, int q) {
    if (q < 0 || q >= d.num_qubits) {
        throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for device " + d.name);
    }
}

Edge parse_edge_key(const std::string& key) {
    int x = 0;
    int y = 0;
    const char* end = key.data() + key.size();
    auto [p1, ec1] = std::from_chars(key.data(), end, x);
    if (ec1 == std::errc{} && p1 != end && *p1 == '-') {
        auto [p2, ec2] = std::from_chars(p1 + 1, end, y);
        if (ec2 == std::errc{} && p2 == end) return Edge::of(x, y);
    }
    throw std::invalid_argument("cx_error key \"" + key + "\" is not \"i-j\"");
}

}  // namespace

std::string edge_key(const Edge& e) { return std::to_string(e.a) + "-" + std::to_string(e.b); }

double DeviceModel::edge_error(int x, int y) const {
    const auto it = cx_error.find(Edge::of(x, y));
    if (it == cx_error.end()) throw std::invalid_argument("no coupling between qubits " + std::to_string(x) + " and " + std::to_string(y));
    return it->second;
}

double DeviceModel::mean_cx_error() const {
    if (cx_error.empty()) return 0.0;
    double s = 0.0;
    for (const auto& [e, p] : cx_error) s += p;
    return s / static_cast<double>(cx_error.size());
}

double DeviceModel::mean_single_qubit_error() const {
    if (single_qubit_error.empty()) return 0.0;
    return std::accumulate(single_qubit_error.begin(), single_qubit_error.end(), 0.0) /
           static_cast<double>(single_qubit_error.size());
}

void validate(const DeviceModel& d) {
    if (d.num_qubits < 1) throw std::invalid_argument("device must have at least one qubit");
    for (const auto& e : d.edges) {
        if (e.a < 0 || e.b >= d.num_qubits) {
            throw std::invalid_argument("dangling edge " + edge_key(e) + " on a " + std::to_string(d.num_qubits) +
                                        "-qubit device");
        }
        if (e.a == e.b) throw std::invalid_argument("self-loop edge " + edge_key(e));
        if (!d.cx_error.contains(e)) throw std::invalid_argument("missing cx_error for edge " + edge_key(e));
    }
    for (const auto& [e, p] : d.cx_error) {
        if (std::find(d.edges.begin(), d.edges.end(), e) == d.edges.end()) {
            throw std::invalid_argument("cx_error given for non-edge " + edge_key(e));
        }
        check_rate(p, "cx_error " + edge_key(e));
    }
    if (static_cast<int>(d.readout_error.size()) != d.num_qubits) {
        throw std::invalid_argument("readout_error must list one rate per qubit");
    }
    if (static_cast<int>(d.single_qubit_error.size()) != d.num_qubits) {
        throw std::invalid_argument("single_qubit_error must list one rate per qubit");
    }
    for (double p : d.readout_error) check_rate(p, "readout_error");
    for (double p : d.single_qubit_error) check_rate(p, "single_qubit_error");

    const auto dist = distance_matrix(d);
    for (int q = 1; q < d.num_qubits; ++q) {
        if (dist[0][static_cast<std::size_t>(q)] < 0) throw std::invalid_argument("coupling graph is disconnected");
    }
}

DeviceModel device_from_json(const json& doc) {
    DeviceModel d;
    try {
        d.name = doc.value("name", std::string{"device"});
        d.num_qubits = doc.at("n").get<int>();
        for (const auto& pair : doc.at("edges")) {
            const auto ij = pair.get<std::vector<int>>();
            if (ij.size() != 2) throw std::invalid_argument("edge must have two endpoints");
            const Edge e = Edge::of(ij[0], ij[1]);
            if (std::find(d.edges.begin(), d.edges.end(), e) != d.edges.end()) {
                throw std::invalid_argument("duplicate edge " + edge_key(e));
            }
            d.edges.push_back(e);
        }
        for (const auto& [key, value] : doc.at("cx_error").items()) {
            d.cx_error[parse_edge_key(key)] = value.get<double>();
        }
        d.readout_error = doc.at("readout_error").get<std::vector<double>>();
        d.single_qubit_error = doc.at("single_qubit_error").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed device config: ") + e.what());
    }
    validate(d);
    return d;
}

DeviceModel load_device(std::string_view config_text) {
    json doc;
    try {
        doc = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return device_from_json(doc);
}

DeviceModel load_device_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open device file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return load_device(buf.str());
}

json to_json(const DeviceModel& d) {
    json doc;
    doc["name"] = d.name;
    doc["n"] = d.num_qubits;
    json edges = json::array();
    for (const auto& e : d.edges) edges.push_back({e.a, e.b});
    doc["edges"] = edges;
    json cx = json::object();
    for (const auto& [e, p] : d.cx_error) cx[edge_key(e)] = p;
    doc["cx_error"] = cx;
    doc["readout_error"] = d.readout_error;
    doc["single_qubit_error"] = d.single_qubit_error;
    return doc;
}

bool allowed(const DeviceModel& device, int control, int target) {
    check_index(device, control);
    check_index(device, target);
    if (control == target) throw std::invalid_argument("CX control and target must differ");
    const Edge e = Edge::of(control, target);
    return std::find(device.edges.begin(), device.edges.end(), e) != device.edges.end();
}

std::vector<int> neighbours(const DeviceModel& device, int qubit) {
    std::vector<int> out;
    for (const auto& e : device.edges) {
        if (e.a == qubit) out.push_back(e.b);
        if (e.b == qubit) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> distance_matrix(const DeviceModel& device) {
    const auto n = static_cast<std::size_t>(device.num_qubits);
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (std::size_t src = 0; src < n; ++src) {
        std::queue<int> frontier;
        dist[src][src] = 0;
        frontier.push(static_cast<int>(src));
        while (!frontier.empty()) {
            const int q = frontier.front();
            frontier.pop();
            for (int nb : neighbours(device, q)) {
                auto& d = dist[src][static_cast<std::size_t>(nb)];
                if (d < 0) {
                    d = dist[src][static_cast<std::size_t>(q)] + 1;
                    frontier.push(nb);
                }
            }
        }
    }
    return dist;
}

std::string_view qx2_config_text() { return kQx2Config; }
std::string_view ourense_config_text() { return kOurenseConfig; }

const DeviceModel& qx2_device() {
    static const DeviceModel d = load_device(kQx2Config);
    return d;
}

const DeviceModel& ourense_device() {
    static const DeviceModel d = load_device(kOurenseConfig);
    return d;
}

DeviceModel noiseless(DeviceModel device) {
    for (auto& [e, p] : device.cx_error) p = 0.0;
    std::fill(device.readout_error.begin(), device.readout_error.end(), 0.0);
    std::fill(device.single_qubit_error.begin(), device.single_qubit_error.end(), 0.0);
    return device;
}

}  // namespace qpoker
