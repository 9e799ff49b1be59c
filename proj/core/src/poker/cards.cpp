#include "qpoker/poker/cards.hpp"

#include <stdexcept>
#include <string>

namespace qpoker {

int arity(CardKind kind) noexcept {
    return kind == CardKind::CX ? 2 : 1;
}

std::string_view to_string(CardKind kind) noexcept {
    switch (kind) {
        case CardKind::X: return "X";
        case CardKind::H: return "H";
        case CardKind::Z: return "Z";
        case CardKind::ZH: return "ZH";
        case CardKind::CX: return "CX";
    }
    return "?";
}

CardKind parse_card_kind(std::string_view text) {
    for (CardKind k : kCardKinds) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown card kind \"" + std::string(text) + "\"");
}

std::vector<Gate> card_gates(CardKind kind, std::span<const int> targets) {
    if (static_cast<int>(targets.size()) != arity(kind)) {
        throw std::invalid_argument(std::string(to_string(kind)) + " card takes " + std::to_string(arity(kind)) +
                                    " target(s)");
    }
    std::vector<Gate> gates;
    switch (kind) {
        case CardKind::X: gates = {Gate::x(targets[0])}; break;
        case CardKind::H: gates = {Gate::h(targets[0])}; break;
        case CardKind::Z: gates = {Gate::z(targets[0])}; break;
        case CardKind::ZH: gates = {Gate::z(targets[0]), Gate::h(targets[0])}; break;
        case CardKind::CX: gates = {Gate::cx(targets[0], targets[1])}; break;
    }
    for (auto& g : gates) g.tag = Provenance::player;
    return gates;
}

std::vector<Card> build_deck(const std::map<CardKind, int>& counts) {
    std::vector<Card> deck;
    int id = 0;
    for (CardKind k : kCardKinds) {
        const auto it = counts.find(k);
        if (it == counts.end()) continue;
        if (it->second < 0) throw std::invalid_argument("negative card count");
        for (int i = 0; i < it->second; ++i) deck.push_back({id++, k});
    }
    return deck;
}

std::optional<std::vector<CardStep>> card_steps_for(const Circuit& circuit) {
    const auto& ops = circuit.ops();
    std::vector<CardStep> out;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Gate& g = ops[i];
        switch (g.kind) {
            case GateKind::X:
            case GateKind::PauliX: out.push_back({CardKind::X, g.targets}); break;
            case GateKind::Z:
            case GateKind::PauliZ:
                if (i + 1 < ops.size() && ops[i + 1].kind == GateKind::H && ops[i + 1].targets == g.targets) {
                    out.push_back({CardKind::ZH, g.targets});
                    ++i;
                } else {
                    out.push_back({CardKind::Z, g.targets});
                }
                break;
            case GateKind::H: out.push_back({CardKind::H, g.targets}); break;
            case GateKind::CX: out.push_back({CardKind::CX, g.targets}); break;
            case GateKind::PauliI: break;
            default: return std::nullopt;
        }
    }
    return out;
}

std::optional<std::vector<CardKind>> cards_for(const Circuit& circuit) {
    const auto steps = card_steps_for(circuit);
    if (!steps) return std::nullopt;
    std::vector<CardKind> out;
    for (const auto& step : *steps) out.push_back(step.kind);
    return out;
}

}  // namespace qpoker
