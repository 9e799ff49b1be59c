#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpoker/circuit/circuit.hpp"
#include "qpoker/poker/cards.hpp"
#include "qpoker/qcore/types.hpp"

namespace qpoker {

enum class Stage { preflop, flop, turn, river, showdown, complete };
std::string_view to_string(Stage stage) noexcept;

enum class ActionKind { fold, check, call, raise };
std::string_view to_string(ActionKind kind) noexcept;
ActionKind parse_action_kind(std::string_view text);

// For raise, `amount` is the player's total bet for the round after raising.
struct Action {
    ActionKind kind = ActionKind::check;
    std::int64_t amount = 0;

    static Action fold() { return {ActionKind::fold}; }
    static Action check() { return {ActionKind::check}; }
    static Action call() { return {ActionKind::call}; }
    static Action raise_to(std::int64_t amount) { return {ActionKind::raise, amount}; }
    friend bool operator==(const Action&, const Action&) = default;
};

enum class Scoring { single_shot, expectation };

struct GameConfig {
    int n_community_qubits = 5;
    std::map<CardKind, int> deck{{CardKind::X, 4}, {CardKind::H, 4}, {CardKind::Z, 4}, {CardKind::ZH, 4}, {CardKind::CX, 4}};
    int hand_size = 3;
    std::int64_t small_blind = 1;
    std::int64_t big_blind = 2;
    std::uint64_t seed = 0;
    Scoring scoring = Scoring::single_shot;
    // Benchmark variant: no betting, score counts zeros.
    bool benchmark = false;
    friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// Throws std::invalid_argument when the deck cannot cover `players` hands,
// blinds are not positive or hand_size < 1.
void validate(const GameConfig& config, int players);

struct Seat {
    std::string name;
    std::int64_t stack = 0;
};

struct Placement {
    Card card;
    std::vector<int> targets;
    friend bool operator==(const Placement&, const Placement&) = default;
};

struct Player {
    std::string name;
    std::int64_t stack = 0;
    std::vector<Card> hand;
    bool sitting_out = false;  // joined the hand with no chips
    bool folded = false;
    bool all_in = false;
    bool acted = false;  // since the last full raise of this round
    std::int64_t bet = 0;        // this betting round
    std::int64_t committed = 0;  // this hand
    std::vector<Placement> placed;
    bool revealed = false;  // finished placing
    friend bool operator==(const Player&, const Player&) = default;
};

struct Score {
    int player = 0;
    std::uint64_t outcome = 0;  // measured basis state (single-shot scoring)
    double value = 0.0;
    friend bool operator==(const Score&, const Score&) = default;
};

struct Pot {
    std::int64_t amount = 0;
    std::vector<int> eligible;
    std::vector<int> winners;
    friend bool operator==(const Pot&, const Pot&) = default;
};

struct HandResult {
    bool uncontested = false;
    std::vector<Score> scores;
    std::vector<Pot> pots;
    std::vector<std::int64_t> payouts;  // per seat
    friend bool operator==(const HandResult&, const HandResult&) = default;
};

struct GameState {
    GameConfig config;
    std::uint64_t hand_number = 0;
    std::vector<Player> players;
    int dealer = 0;
    Stage stage = Stage::preflop;
    int revealed = 0;  // community qubits shown: 0, 3, 4 or 5
    Circuit community{5};
    std::int64_t current_bet = 0;
    std::int64_t min_raise = 0;
    int to_act = -1;  // -1 outside betting
    std::vector<Card> undealt;
    std::optional<HandResult> result;

    std::int64_t pot() const;
    std::int64_t total_chips() const;  // stacks + pot
    int active_count() const;          // not folded
    friend bool operator==(const GameState&, const GameState&) = default;
};

// Rejected action; the state is left untouched.
class IllegalAction : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Random register preparation U for a hand.
using CommunityGenerator = std::function<Circuit(int num_qubits, Rng& rng)>;

// Each qubit |0>, |1>, |+>, |-> with probabilities 0.3, 0.3, 0.2, 0.2; then
// with probability 0.4 one random qubit pair is replaced by a Bell pair.
Circuit standard_community(int num_qubits, Rng& rng);

// Per-hand random streams derived from (config.seed, hand_number).
std::uint64_t hand_seed(const GameConfig& config, std::uint64_t hand_number);

// Posts blinds and deals. Seats with a zero stack sit the hand out.
GameState new_hand(const GameConfig& config, std::span<const Seat> seats, int dealer, std::uint64_t hand_number = 0,
                   const CommunityGenerator& generator = standard_community);

struct LegalActions {
    bool fold = false;
    bool check = false;
    bool call = false;
    std::int64_t call_amount = 0;  // chips moved by a call (may be all-in)
    bool raise = false;
    std::int64_t min_raise_to = 0;
    std::int64_t max_raise_to = 0;  // all-in
};

// Everything false when it is not the player's turn.
LegalActions legal_actions(const GameState& state, int player);

void act(GameState& state, int player, const Action& action);

// Checks that the card is in the player's hand and the targets fit it.
// Throws IllegalAction otherwise.
Placement resolve_placement(const GameState& state, int player, int card_id, std::vector<int> targets);

// Showdown stage only. Targets must be distinct qubits of the register.
void place_gate(GameState& state, int player, int card_id, std::vector<int> targets);

// Marks the player done placing; resolves the showdown once every unfolded
// player has revealed.
void reveal(GameState& state, int player);

// Measures every unfolded player's V.U once and pays the pots.
void showdown(GameState& state, Rng& rng);
void showdown(GameState& state);  // uses the hand's own stream

// Community followed by the player's placements (and optional staged ones).
Circuit personal_circuit(const GameState& state, int player, std::span<const Placement> staged = {});

struct QubitView {
    int qubit = 0;
    double p_one = 0.0;
    bool paired = false;  // entangled with the rest of the register
    std::string color;
    friend bool operator==(const QubitView&, const QubitView&) = default;
};

// Display color: cyan near P(1)=0, blue near 0.5, pink near 1.
std::string probability_color(double p_one);

// Exact marginals of the revealed qubits of the player's personal state.
std::vector<QubitView> preview(const GameState& state, int player, std::span<const Placement> staged = {});

// Pots by contribution level; folded chips stay in the pots they reached.
std::vector<Pot> build_pots(std::span<const std::int64_t> committed, const std::vector<bool>& folded);

// Splits each pot among its winners; odd chips go one at a time to winners
// in seat order starting left of the dealer.
std::vector<std::int64_t> distribute(std::span<const Pot> pots, int seats, int dealer);

// Benchmark variant: no betting; every player holds the cards that undo U.
// Throws std::runtime_error if the generator keeps producing circuits with
// gates outside the card set.
GameState benchmark_hand(const GameConfig& config, std::span<const Seat> seats,
                         const CommunityGenerator& generator = standard_community);

// Placements that apply U^dagger, using cards from the player's hand.
std::vector<Placement> reversal_plan(const GameState& state, int player);

}  // namespace qpoker
