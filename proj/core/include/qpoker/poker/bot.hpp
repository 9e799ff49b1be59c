#pragma once

#include "qpoker/poker/game.hpp"
#include "qpoker/poker/game_log.hpp"

namespace qpoker {

// Uniformly random among the legal kinds; raise sizes uniform in
// [min, max] with an occasional shove.
Action random_legal_action(const GameState& state, int player, Rng& rng);

struct CardPlay {
    int card_id = 0;
    std::vector<int> targets;
};

// A random subset of the player's hand on random qubits.
std::vector<CardPlay> random_card_plays(const GameState& state, int player, Rng& rng);

// Drives the current hand to completion with random legal moves for every
// seat and returns the number of betting actions taken.
int play_random_hand(Table& table, Rng& rng);

}  // namespace qpoker
