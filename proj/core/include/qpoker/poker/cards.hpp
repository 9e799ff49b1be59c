#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qpoker/circuit/circuit.hpp"

namespace qpoker {

// ZH applies Z first, then H (operator H*Z), taking |-> to |0>.
enum class CardKind { X, H, Z, ZH, CX };
inline constexpr std::array<CardKind, 5> kCardKinds{CardKind::X, CardKind::H, CardKind::Z, CardKind::ZH, CardKind::CX};

struct Card {
    int id = 0;  // unique within the deck
    CardKind kind = CardKind::X;
    friend bool operator==(const Card&, const Card&) = default;
};

int arity(CardKind kind) noexcept;
std::string_view to_string(CardKind kind) noexcept;
CardKind parse_card_kind(std::string_view text);

// Gates realizing the card on the given qubits, tagged Provenance::player.
std::vector<Gate> card_gates(CardKind kind, std::span<const int> targets);

// Unshuffled deck, ids assigned in kCardKinds order.
std::vector<Card> build_deck(const std::map<CardKind, int>& counts);

struct CardStep {
    CardKind kind = CardKind::X;
    std::vector<int> targets;
};

// Cards that reproduce the circuit in order, or nullopt if some gate has no
// card (U1..U3, SWAP, ...). Z directly followed by H on the same qubit uses
// one ZH card.
std::optional<std::vector<CardStep>> card_steps_for(const Circuit& circuit);
std::optional<std::vector<CardKind>> cards_for(const Circuit& circuit);

}  // namespace qpoker
