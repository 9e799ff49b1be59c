#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qpoker/poker/game.hpp"

namespace qpoker {

nlohmann::json to_json(const GameConfig& config);
GameConfig game_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Card& card);
nlohmann::json to_json(const Placement& placement);
nlohmann::json to_json(const HandResult& result);
nlohmann::json to_json(const QubitView& view);
// Complete, unredacted state.
nlohmann::json to_json(const GameState& state);

// FNV-1a over the canonical JSON of the full state.
std::uint64_t state_hash(const GameState& state);

// A sequence of hands at one table, recorded as JSON-lines events:
//   start     {config, seats, dealer}
//   act       {player, action, amount}
//   place     {player, card, targets}
//   reveal    {player}
//   result    {result}     written whenever a hand completes
//   next_hand {}
// Every event carries "v": 1 and a sequence number "seq".
class Table {
public:
    Table(GameConfig config, std::vector<Seat> seats, int dealer = 0);
    // Single benchmark-variant hand: no betting, scoring counts zeros.
    static Table benchmark(GameConfig config, std::vector<Seat> seats);

    // Rebuilds the table by re-executing the events. Throws std::runtime_error
    // if a recorded result disagrees with the replayed one.
    static Table replay(std::span<const nlohmann::json> events);
    static Table replay_jsonl(std::istream& in);

    const GameState& state() const noexcept { return state_; }
    const std::vector<nlohmann::json>& events() const noexcept { return events_; }
    std::string jsonl() const;
    std::uint64_t hash() const { return state_hash(state_); }

    // Called with every event after it is committed.
    void set_event_sink(std::function<void(const nlohmann::json&)> sink) { sink_ = std::move(sink); }

    void act(int player, const Action& action);
    void place(int player, int card_id, std::vector<int> targets);
    void reveal(int player);

    // At least two seats still have chips.
    bool can_continue() const;
    // Starts the next hand with the button moved to the next seat with chips.
    void next_hand();

private:
    Table() = default;
    void record(nlohmann::json event);
    void record_result_if_complete(bool was_complete);

    std::vector<Seat> seats_;
    GameState state_;
    std::vector<nlohmann::json> events_;
    std::function<void(const nlohmann::json&)> sink_;
};

}  // namespace qpoker
