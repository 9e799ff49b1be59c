#include "qpoker/poker/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qpoker/qcore/sampling.hpp"
#include "qpoker/qcore/simulate.hpp"

namespace qpoker {

namespace {

constexpr double kTieTolerance = 1e-9;

bool betting(Stage s) {
    return s == Stage::preflop || s == Stage::flop || s == Stage::turn || s == Stage::river;
}

bool actionable(const Player& p) {
    return !p.folded && !p.all_in && !p.sitting_out;
}

bool needs_to_act(const GameState& s, const Player& p) {
    return actionable(p) && (!p.acted || p.bet < s.current_bet);
}

template <class Pred>
int next_seat(const GameState& s, int from, Pred pred) {
    const int n = static_cast<int>(s.players.size());
    for (int k = 1; k <= n; ++k) {
        const int i = ((from + k) % n + n) % n;
        if (pred(s.players[static_cast<std::size_t>(i)])) return i;
    }
    return -1;
}

int count_if_players(const GameState& s, bool (*pred)(const Player&)) {
    return static_cast<int>(std::count_if(s.players.begin(), s.players.end(), pred));
}

int revealed_after(Stage stage, int n) {
    switch (stage) {
        case Stage::preflop: return 0;
        case Stage::flop: return std::clamp(n - 2, 1, n);
        case Stage::turn: return std::clamp(n - 1, 1, n);
        default: return n;
    }
}

void commit(Player& p, std::int64_t amount) {
    amount = std::min(amount, p.stack);
    p.stack -= amount;
    p.bet += amount;
    p.committed += amount;
    if (p.stack == 0) p.all_in = true;
}

Player& player_at(GameState& s, int player) {
    if (player < 0 || player >= static_cast<int>(s.players.size())) throw IllegalAction("unknown player");
    return s.players[static_cast<std::size_t>(player)];
}

void award_uncontested(GameState& s) {
    const int winner = next_seat(s, -1, [](const Player& p) { return !p.folded; });
    HandResult r;
    r.uncontested = true;
    Pot pot{s.pot(), {winner}, {winner}};
    r.pots.push_back(pot);
    r.payouts.assign(s.players.size(), 0);
    r.payouts[static_cast<std::size_t>(winner)] = pot.amount;
    s.players[static_cast<std::size_t>(winner)].stack += pot.amount;
    s.result = std::move(r);
    s.stage = Stage::complete;
    s.to_act = -1;
}

void end_round(GameState& s) {
    for (auto& p : s.players) {
        p.bet = 0;
        p.acted = false;
    }
    s.current_bet = 0;
    s.min_raise = s.config.big_blind;
    const int n = s.config.n_community_qubits;
    if (count_if_players(s, actionable) <= 1) {
        s.stage = Stage::showdown;
    } else {
        s.stage = static_cast<Stage>(static_cast<int>(s.stage) + 1);
    }
    s.revealed = revealed_after(s.stage, n);
    s.to_act = s.stage == Stage::showdown ? -1 : next_seat(s, s.dealer, actionable);
}

bool round_complete(const GameState& s) {
    const bool anyone_owes = std::any_of(s.players.begin(), s.players.end(),
                                         [&](const Player& p) { return needs_to_act(s, p); });
    if (!anyone_owes) return true;
    if (count_if_players(s, actionable) > 1) return false;
    return std::all_of(s.players.begin(), s.players.end(),
                       [&](const Player& p) { return !actionable(p) || p.bet >= s.current_bet; });
}

// Moves play on after `last` acted (or after the blinds).
void advance(GameState& s, int last) {
    if (s.active_count() == 1) {
        award_uncontested(s);
        return;
    }
    if (round_complete(s)) {
        end_round(s);
        return;
    }
    s.to_act = next_seat(s, last, [&](const Player& p) { return needs_to_act(s, p); });
}

std::vector<Card> shuffled_deck(const GameConfig& config, Rng& rng) {
    auto deck = build_deck(config.deck);
    for (std::size_t i = deck.size(); i > 1; --i) {
        std::swap(deck[i - 1], deck[uniform_below(rng, i)]);
    }
    return deck;
}

std::vector<Player> seat_players(std::span<const Seat> seats) {
    std::vector<Player> players;
    for (const auto& seat : seats) {
        if (seat.stack < 0) throw std::invalid_argument("negative stack for " + seat.name);
        Player p;
        p.name = seat.name;
        p.stack = seat.stack;
        p.sitting_out = seat.stack == 0;
        p.folded = p.sitting_out;
        players.push_back(std::move(p));
    }
    return players;
}

Circuit generate_community(const GameConfig& config, Rng& rng, const CommunityGenerator& generator) {
    Circuit u = generator(config.n_community_qubits, rng);
    if (u.num_qubits() != config.n_community_qubits) throw std::runtime_error("community generator returned wrong width");
    Circuit tagged = with_tag(u, Provenance::community);
    tagged.set_name("community");
    return tagged;
}

}  // namespace

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
        case Stage::preflop: return "preflop";
        case Stage::flop: return "flop";
        case Stage::turn: return "turn";
        case Stage::river: return "river";
        case Stage::showdown: return "showdown";
        case Stage::complete: return "complete";
    }
    return "?";
}

std::string_view to_string(ActionKind kind) noexcept {
    switch (kind) {
        case ActionKind::fold: return "fold";
        case ActionKind::check: return "check";
        case ActionKind::call: return "call";
        case ActionKind::raise: return "raise";
    }
    return "?";
}

ActionKind parse_action_kind(std::string_view text) {
    for (auto k : {ActionKind::fold, ActionKind::check, ActionKind::call, ActionKind::raise}) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown action \"" + std::string(text) + "\"");
}

void validate(const GameConfig& config, int players) {
    if (config.n_community_qubits < 1 || config.n_community_qubits > kMaxQubits) {
        throw std::invalid_argument("n_community_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (config.hand_size < 1) throw std::invalid_argument("hand_size must be at least 1");
    if (config.small_blind <= 0 || config.big_blind <= 0) throw std::invalid_argument("blinds must be positive");
    if (config.small_blind > config.big_blind) throw std::invalid_argument("small blind exceeds big blind");
    if (players < 1) throw std::invalid_argument("no players");
    if (config.benchmark) return;
    if (players < 2) throw std::invalid_argument("need at least two players with chips");
    const auto deck = build_deck(config.deck);
    if (static_cast<std::int64_t>(deck.size()) < static_cast<std::int64_t>(players) * config.hand_size) {
        throw std::invalid_argument("deck of " + std::to_string(deck.size()) + " cards cannot deal " +
                                    std::to_string(players) + " hands of " + std::to_string(config.hand_size));
    }
}

std::int64_t GameState::pot() const {
    if (stage == Stage::complete) return 0;
    std::int64_t total = 0;
    for (const auto& p : players) total += p.committed;
    return total;
}

std::int64_t GameState::total_chips() const {
    std::int64_t total = pot();
    for (const auto& p : players) total += p.stack;
    return total;
}

int GameState::active_count() const {
    return static_cast<int>(std::count_if(players.begin(), players.end(), [](const Player& p) { return !p.folded; }));
}

std::uint64_t hand_seed(const GameConfig& config, std::uint64_t hand_number) {
    return fork_seed(config.seed, hand_number);
}

Circuit standard_community(int num_qubits, Rng& rng) {
    enum Prep { zero, one, plus, minus, bell };
    std::vector<Prep> prep(static_cast<std::size_t>(num_qubits));
    for (auto& p : prep) {
        const double u = uniform01(rng);
        p = u < 0.3 ? zero : u < 0.6 ? one : u < 0.8 ? plus : minus;
    }
    int a = -1, b = -1;
    bool anti = false;
    if (num_qubits >= 2 && bernoulli(rng, 0.4)) {
        a = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(num_qubits)));
        b = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(num_qubits - 1)));
        if (b >= a) ++b;
        anti = bernoulli(rng, 0.5);
        prep[static_cast<std::size_t>(a)] = bell;
        prep[static_cast<std::size_t>(b)] = bell;
    }
    Circuit c(num_qubits, "community");
    for (int q = 0; q < num_qubits; ++q) {
        switch (prep[static_cast<std::size_t>(q)]) {
            case one: c.append(Gate::x(q)); break;
            case plus: c.append(Gate::h(q)); break;
            case minus:
                c.append(Gate::x(q));
                c.append(Gate::h(q));
                break;
            default: break;
        }
    }
    if (a >= 0) {
        if (anti) c.append(Gate::x(b));
        c.append(Gate::h(a));
        c.append(Gate::cx(a, b));
    }
    return c;
}

GameState new_hand(const GameConfig& config, std::span<const Seat> seats, int dealer, std::uint64_t hand_number,
                   const CommunityGenerator& generator) {
    if (config.benchmark) throw std::invalid_argument("benchmark games are started with benchmark_hand");
    if (seats.empty()) throw std::invalid_argument("no players");
    if (dealer < 0 || dealer >= static_cast<int>(seats.size())) throw std::invalid_argument("dealer seat out of range");

    GameState s;
    s.config = config;
    s.hand_number = hand_number;
    s.dealer = dealer;
    s.players = seat_players(seats);
    const int seated = static_cast<int>(std::count_if(s.players.begin(), s.players.end(),
                                                      [](const Player& p) { return !p.sitting_out; }));
    validate(config, seated);

    const std::uint64_t seed = hand_seed(config, hand_number);
    Rng deal_rng(fork_seed(seed, 0));
    Rng community_rng(fork_seed(seed, 1));
    auto deck = shuffled_deck(config, deal_rng);
    std::size_t next = 0;
    for (int round = 0; round < config.hand_size; ++round) {
        int seat = dealer;
        for (int k = 0; k < seated; ++k) {
            seat = next_seat(s, seat, [](const Player& p) { return !p.sitting_out; });
            s.players[static_cast<std::size_t>(seat)].hand.push_back(deck[next++]);
        }
    }
    s.undealt.assign(deck.begin() + static_cast<std::ptrdiff_t>(next), deck.end());
    s.community = generate_community(config, community_rng, generator);

    const auto seated_pred = [](const Player& p) { return !p.sitting_out; };
    const int sb = seated == 2 && seated_pred(s.players[static_cast<std::size_t>(dealer)]) ? dealer
                                                                                          : next_seat(s, dealer, seated_pred);
    const int bb = next_seat(s, sb, seated_pred);
    commit(s.players[static_cast<std::size_t>(sb)], config.small_blind);
    commit(s.players[static_cast<std::size_t>(bb)], config.big_blind);
    s.current_bet = std::max(s.players[static_cast<std::size_t>(sb)].bet, s.players[static_cast<std::size_t>(bb)].bet);
    s.min_raise = config.big_blind;
    s.stage = Stage::preflop;
    advance(s, bb);
    return s;
}

LegalActions legal_actions(const GameState& s, int player) {
    LegalActions la;
    if (!betting(s.stage) || player != s.to_act || player < 0) return la;
    const Player& p = s.players[static_cast<std::size_t>(player)];
    const std::int64_t to_call = s.current_bet - p.bet;
    la.fold = true;
    la.check = to_call == 0;
    la.call = to_call > 0;
    la.call_amount = std::min(to_call, p.stack);
    const bool opponent_can_respond = std::any_of(s.players.begin(), s.players.end(), [&](const Player& o) {
        return &o != &p && actionable(o);
    });
    la.raise = !p.acted && p.stack > to_call && opponent_can_respond;
    if (la.raise) {
        la.max_raise_to = p.bet + p.stack;
        la.min_raise_to = std::min(s.current_bet + s.min_raise, la.max_raise_to);
    }
    return la;
}

void act(GameState& s, int player, const Action& action) {
    if (!betting(s.stage)) throw IllegalAction("no betting round in progress");
    Player& p = player_at(s, player);
    if (p.folded) throw IllegalAction("player has folded");
    if (player != s.to_act) throw IllegalAction("out of turn");

    const LegalActions la = legal_actions(s, player);
    switch (action.kind) {
        case ActionKind::fold:
            p.folded = true;
            break;
        case ActionKind::check:
            if (!la.check) {
                throw IllegalAction("illegal action: check facing a bet of " + std::to_string(s.current_bet - p.bet));
            }
            p.acted = true;
            break;
        case ActionKind::call:
            if (!la.call) throw IllegalAction("illegal action: nothing to call");
            commit(p, la.call_amount);
            p.acted = true;
            break;
        case ActionKind::raise: {
            if (!la.raise) throw IllegalAction("illegal action: raising is closed");
            if (action.amount > la.max_raise_to) {
                throw IllegalAction("raise to " + std::to_string(action.amount) + " exceeds stack (max " +
                                    std::to_string(la.max_raise_to) + ")");
            }
            if (action.amount < la.min_raise_to || action.amount <= s.current_bet) {
                throw IllegalAction("raise below minimum: " + std::to_string(action.amount) + " < " +
                                    std::to_string(la.min_raise_to));
            }
            const std::int64_t increment = action.amount - s.current_bet;
            commit(p, action.amount - p.bet);
            if (increment >= s.min_raise) {
                s.min_raise = increment;
                for (auto& o : s.players) o.acted = false;
            }
            s.current_bet = action.amount;
            p.acted = true;
            break;
        }
    }
    advance(s, player);
}

Placement resolve_placement(const GameState& s, int player, int card_id, std::vector<int> targets) {
    if (player < 0 || player >= static_cast<int>(s.players.size())) throw IllegalAction("unknown player");
    const Player& p = s.players[static_cast<std::size_t>(player)];
    if (p.folded) throw IllegalAction("player has folded");
    const auto it = std::find_if(p.hand.begin(), p.hand.end(), [&](const Card& c) { return c.id == card_id; });
    if (it == p.hand.end()) throw IllegalAction("card " + std::to_string(card_id) + " not in hand");
    if (static_cast<int>(targets.size()) != arity(it->kind)) {
        throw IllegalAction("bad targets: " + std::string(to_string(it->kind)) + " takes " +
                            std::to_string(arity(it->kind)) + " qubit(s)");
    }
    for (int t : targets) {
        if (t < 0 || t >= s.config.n_community_qubits) throw IllegalAction("bad targets: qubit out of range");
    }
    if (targets.size() == 2 && targets[0] == targets[1]) throw IllegalAction("bad targets: duplicate qubit");
    return {*it, std::move(targets)};
}

void place_gate(GameState& s, int player, int card_id, std::vector<int> targets) {
    if (s.stage != Stage::showdown) throw IllegalAction("cards can only be placed at showdown");
    Placement placement = resolve_placement(s, player, card_id, std::move(targets));
    Player& p = s.players[static_cast<std::size_t>(player)];
    if (p.revealed) throw IllegalAction("player has already revealed");
    std::erase(p.hand, placement.card);
    p.placed.push_back(std::move(placement));
}

void reveal(GameState& s, int player) {
    if (s.stage != Stage::showdown) throw IllegalAction("nothing to reveal before showdown");
    Player& p = player_at(s, player);
    if (p.folded) throw IllegalAction("player has folded");
    if (p.revealed) throw IllegalAction("player has already revealed");
    p.revealed = true;
    const bool all = std::all_of(s.players.begin(), s.players.end(), [](const Player& o) { return o.folded || o.revealed; });
    if (all) showdown(s);
}

Circuit personal_circuit(const GameState& s, int player, std::span<const Placement> staged) {
    if (player < 0 || player >= static_cast<int>(s.players.size())) throw std::invalid_argument("unknown player");
    Circuit c = s.community;
    c.set_name(s.players[static_cast<std::size_t>(player)].name);
    const auto add = [&](const Placement& pl) {
        for (const auto& g : card_gates(pl.card.kind, pl.targets)) c.append(g);
    };
    for (const auto& pl : s.players[static_cast<std::size_t>(player)].placed) add(pl);
    for (const auto& pl : staged) add(pl);
    return c;
}

std::vector<Pot> build_pots(std::span<const std::int64_t> committed, const std::vector<bool>& folded) {
    if (committed.size() != folded.size()) throw std::invalid_argument("build_pots: size mismatch");
    std::vector<std::int64_t> levels;
    for (std::size_t i = 0; i < committed.size(); ++i) {
        if (!folded[i] && committed[i] > 0) levels.push_back(committed[i]);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<Pot> pots;
    std::int64_t prev = 0;
    for (std::int64_t level : levels) {
        Pot pot;
        for (std::size_t i = 0; i < committed.size(); ++i) {
            pot.amount += std::min(committed[i], level) - std::min(committed[i], prev);
            if (!folded[i] && committed[i] >= level) pot.eligible.push_back(static_cast<int>(i));
        }
        pots.push_back(std::move(pot));
        prev = level;
    }
    std::int64_t excess = 0;
    for (std::int64_t c : committed) excess += c - std::min(c, prev);
    if (excess > 0) {
        if (pots.empty()) throw std::invalid_argument("build_pots: chips committed but nobody eligible");
        pots.back().amount += excess;
    }
    return pots;
}

std::vector<std::int64_t> distribute(std::span<const Pot> pots, int seats, int dealer) {
    std::vector<std::int64_t> payout(static_cast<std::size_t>(seats), 0);
    for (const auto& pot : pots) {
        if (pot.winners.empty()) throw std::invalid_argument("pot without winners");
        std::vector<int> order = pot.winners;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return (a - dealer - 1 + seats) % seats < (b - dealer - 1 + seats) % seats;
        });
        const auto k = static_cast<std::int64_t>(order.size());
        const std::int64_t share = pot.amount / k;
        std::int64_t odd = pot.amount % k;
        for (int w : order) {
            payout[static_cast<std::size_t>(w)] += share + (odd > 0 ? 1 : 0);
            if (odd > 0) --odd;
        }
    }
    return payout;
}

void showdown(GameState& s, Rng& rng) {
    if (s.stage != Stage::showdown) throw IllegalAction("showdown requires betting to be complete");
    const int n = s.config.n_community_qubits;
    HandResult r;
    std::vector<double> value(s.players.size(), -1.0);
    for (std::size_t i = 0; i < s.players.size(); ++i) {
        if (s.players[i].folded) continue;
        const auto probs = run_circuit(personal_circuit(s, static_cast<int>(i))).probabilities();
        Score score{static_cast<int>(i), 0, 0.0};
        if (s.config.scoring == Scoring::single_shot) {
            score.outcome = draw_outcome(cumulative(probs), rng);
            const int ones = std::popcount(score.outcome);
            score.value = s.config.benchmark ? n - ones : ones;
        } else {
            score.value = s.config.benchmark ? expectation_zeros(probs, n) : expectation_ones(probs);
        }
        value[i] = score.value;
        r.scores.push_back(score);
    }

    std::vector<std::int64_t> committed;
    std::vector<bool> folded_flags;
    for (const auto& p : s.players) {
        committed.push_back(p.committed);
        folded_flags.push_back(p.folded);
    }
    r.pots = build_pots(committed, folded_flags);
    for (auto& pot : r.pots) {
        double best = -1.0;
        for (int e : pot.eligible) best = std::max(best, value[static_cast<std::size_t>(e)]);
        for (int e : pot.eligible) {
            if (value[static_cast<std::size_t>(e)] >= best - kTieTolerance) pot.winners.push_back(e);
        }
    }
    r.payouts = distribute(r.pots, static_cast<int>(s.players.size()), s.dealer);
    for (std::size_t i = 0; i < s.players.size(); ++i) s.players[i].stack += r.payouts[i];
    s.result = std::move(r);
    s.stage = Stage::complete;
    s.to_act = -1;
}

void showdown(GameState& s) {
    Rng rng(fork_seed(hand_seed(s.config, s.hand_number), 2));
    showdown(s, rng);
}

std::string probability_color(double p_one) {
    if (p_one < 0.25) return "cyan";
    if (p_one <= 0.75) return "blue";
    return "pink";
}

std::vector<QubitView> preview(const GameState& s, int player, std::span<const Placement> staged) {
    const StateVector psi = run_circuit(personal_circuit(s, player, staged));
    const auto p1 = marginal_one_probabilities(psi);
    std::vector<QubitView> out;
    for (int q = 0; q < s.revealed; ++q) {
        QubitView v;
        v.qubit = q;
        v.p_one = p1[static_cast<std::size_t>(q)];
        v.paired = reduced_purity(psi, q) < 1.0 - 1e-6;
        v.color = probability_color(v.p_one);
        out.push_back(std::move(v));
    }
    return out;
}

GameState benchmark_hand(const GameConfig& config, std::span<const Seat> seats, const CommunityGenerator& generator) {
    GameConfig cfg = config;
    cfg.benchmark = true;
    validate(cfg, static_cast<int>(seats.size()));

    GameState s;
    s.config = cfg;
    s.players = seat_players(seats);
    for (auto& p : s.players) {
        p.sitting_out = false;
        p.folded = false;
    }
    Rng community_rng(fork_seed(hand_seed(cfg, 0), 1));
    constexpr int kAttempts = 100;
    std::optional<std::vector<CardKind>> cards;
    for (int attempt = 0; attempt < kAttempts && !cards; ++attempt) {
        s.community = generate_community(cfg, community_rng, generator);
        cards = cards_for(inverse(s.community));
    }
    if (!cards) throw std::runtime_error("community generator never produced a circuit expressible in cards");

    int id = 0;
    for (auto& p : s.players) {
        for (CardKind k : *cards) p.hand.push_back({id++, k});
    }
    s.stage = Stage::showdown;
    s.revealed = cfg.n_community_qubits;
    s.to_act = -1;
    return s;
}

std::vector<Placement> reversal_plan(const GameState& s, int player) {
    if (player < 0 || player >= static_cast<int>(s.players.size())) throw std::invalid_argument("unknown player");
    std::vector<Card> hand = s.players[static_cast<std::size_t>(player)].hand;
    std::vector<Placement> plan;
    const auto steps = card_steps_for(inverse(s.community));
    if (!steps) throw std::runtime_error("community gate has no matching card");
    for (const auto& step : *steps) {
        const auto it = std::find_if(hand.begin(), hand.end(), [&](const Card& c) { return c.kind == step.kind; });
        if (it == hand.end()) throw std::runtime_error("hand lacks a " + std::string(to_string(step.kind)) + " card");
        plan.push_back({*it, step.targets});
        hand.erase(it);
    }
    return plan;
}

}  // namespace qpoker
