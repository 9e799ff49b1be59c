#include "qpoker/circuit/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qpoker {

using nlohmann::json;

json to_json(const Circuit& circuit) {
    json doc;
    doc["n"] = circuit.num_qubits();
    if (!circuit.name().empty()) doc["name"] = circuit.name();
    json ops = json::array();
    for (const auto& g : circuit.ops()) {
        json op;
        op["kind"] = std::string(to_string(g.kind));
        op["targets"] = g.targets;
        op["params"] = g.params;
        if (g.tag != Provenance::none) op["tag"] = std::string(to_string(g.tag));
        ops.push_back(std::move(op));
    }
    doc["ops"] = std::move(ops);
    return doc;
}

Circuit circuit_from_json(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("malformed circuit document: expected an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw std::invalid_argument("malformed circuit document: missing integer \"n\"");
    }
    if (!doc.contains("ops") || !doc["ops"].is_array()) {
        throw std::invalid_argument("malformed circuit document: missing array \"ops\"");
    }
    Circuit circuit(doc["n"].get<int>(), doc.value("name", std::string{}));
    for (const auto& op : doc["ops"]) {
        if (!op.is_object() || !op.contains("kind") || !op["kind"].is_string()) {
            throw std::invalid_argument("malformed circuit document: op without \"kind\"");
        }
        const auto name = op["kind"].get<std::string>();
        const auto kind = parse_gate_kind(name);
        if (!kind) throw std::invalid_argument("unknown gate kind \"" + name + "\"");
        Gate g;
        g.kind = *kind;
        try {
            g.targets = op.value("targets", std::vector<int>{});
            g.params = op.value("params", std::vector<double>{});
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("malformed circuit document: ") + e.what());
        }
        if (op.contains("tag")) {
            const auto tag = parse_provenance(op["tag"].get<std::string>());
            if (!tag) throw std::invalid_argument("unknown op tag \"" + op["tag"].get<std::string>() + "\"");
            g.tag = *tag;
        }
        circuit.append(std::move(g));
    }
    return circuit;
}

std::string serialize(const Circuit& circuit) { return to_json(circuit).dump(); }

Circuit deserialize(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return circuit_from_json(doc);
}

Circuit load_circuit_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open circuit file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

void save_circuit_file(const Circuit& circuit, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write circuit file " + path.string());
    // One op per line keeps circuit files readable and diff-friendly.
    json doc = to_json(circuit);
    out << "{\n  \"n\": " << doc["n"].dump() << ",\n";
    if (doc.contains("name")) out << "  \"name\": " << doc["name"].dump() << ",\n";
    out << "  \"ops\": [";
    const auto& ops = doc["ops"];
    for (std::size_t i = 0; i < ops.size(); ++i) out << (i ? ",\n    " : "\n    ") << ops[i].dump();
    out << (ops.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace qpoker
