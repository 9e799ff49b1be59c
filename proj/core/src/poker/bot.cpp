#include "qpoker/poker/bot.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpoker {

Action random_legal_action(const GameState& state, int player, Rng& rng) {
    const LegalActions la = legal_actions(state, player);
    std::vector<ActionKind> kinds;
    if (la.fold) kinds.push_back(ActionKind::fold);
    if (la.check) kinds.push_back(ActionKind::check);
    if (la.call) kinds.push_back(ActionKind::call);
    if (la.raise) kinds.push_back(ActionKind::raise);
    if (kinds.empty()) throw std::logic_error("no legal action for player " + std::to_string(player));
    const ActionKind kind = kinds[uniform_below(rng, kinds.size())];
    if (kind != ActionKind::raise) return {kind, 0};
    if (bernoulli(rng, 0.15)) return Action::raise_to(la.max_raise_to);
    const auto span = static_cast<std::uint64_t>(la.max_raise_to - la.min_raise_to);
    return Action::raise_to(la.min_raise_to + static_cast<std::int64_t>(uniform_below(rng, span + 1)));
}

std::vector<CardPlay> random_card_plays(const GameState& state, int player, Rng& rng) {
    const auto& hand = state.players.at(static_cast<std::size_t>(player)).hand;
    const auto n = static_cast<std::uint64_t>(state.config.n_community_qubits);
    std::vector<CardPlay> plays;
    for (const auto& card : hand) {
        if (!bernoulli(rng, 0.6)) continue;
        CardPlay play{card.id, {static_cast<int>(uniform_below(rng, n))}};
        if (arity(card.kind) == 2) {
            if (n < 2) continue;
            int t = static_cast<int>(uniform_below(rng, n - 1));
            if (t >= play.targets[0]) ++t;
            play.targets.push_back(t);
        }
        plays.push_back(std::move(play));
    }
    for (std::size_t i = plays.size(); i > 1; --i) std::swap(plays[i - 1], plays[uniform_below(rng, i)]);
    return plays;
}

int play_random_hand(Table& table, Rng& rng) {
    int actions = 0;
    while (table.state().stage != Stage::complete) {
        const GameState& s = table.state();
        if (s.stage == Stage::showdown) {
            for (int p = 0; p < static_cast<int>(s.players.size()); ++p) {
                const Player& pl = table.state().players[static_cast<std::size_t>(p)];
                if (pl.folded || pl.revealed) continue;
                for (const auto& play : random_card_plays(table.state(), p, rng)) table.place(p, play.card_id, play.targets);
                table.reveal(p);
            }
            continue;
        }
        table.act(s.to_act, random_legal_action(s, s.to_act, rng));
        ++actions;
    }
    return actions;
}

}  // namespace qpoker
