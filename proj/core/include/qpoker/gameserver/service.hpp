#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "qpoker/poker/game.hpp"
#include "qpoker/poker/game_log.hpp"

namespace qpoker::server {

inline constexpr int kProtocolVersion = 1;

// Recipient seat, or kSender for a reply to whoever sent the message
// (used before a connection is authenticated).
inline constexpr int kSender = -1;

struct Envelope {
    int seat = kSender;
    nlohmann::json message;
};

struct GameCreated {
    std::string id;
    std::vector<std::string> tokens;  // one per seat, in seat order
};

// What `seat` may see: its own cards, everyone's public betting state, and
// the preview of its own personal register. Other players' cards and
// placements stay hidden until the hand completes at showdown.
nlohmann::json redacted_view(const GameState& state, int seat);

// Authoritative game sessions, independent of the network transport.
//
// Client messages: {"v":1, "type":..., "token":..., "payload":{...}}
//   join | state                      -> state to the sender
//   act     {action, amount?}         -> state to every seat (+ showdown when the hand ends)
//           action "next_hand" deals the following hand once one is complete
//   place   {card, targets}           -> state to the placing seat only
//   preview {staged:[{card,targets}]} -> preview to the sender, nothing committed
//   reveal                            -> state to every seat (+ showdown when the hand ends)
// Failures produce a single error message to the sender and leave the game unchanged.
class GameService {
public:
    // An empty data_dir disables persistence.
    explicit GameService(std::filesystem::path data_dir = {});

    // {"players":[{"name","stack"}...], "config":{...}, "dealer":0, "benchmark":false}
    // Throws std::invalid_argument for a bad request.
    GameCreated create_game(const nlohmann::json& request);

    std::vector<Envelope> handle(const std::string& game_id, const nlohmann::json& message);

    std::optional<int> authenticate(const std::string& game_id, const std::string& token) const;
    bool has_game(const std::string& game_id) const;
    std::vector<std::string> game_ids() const;

    nlohmann::json state_message(const std::string& game_id, int seat) const;
    // JSON-lines event log. Throws std::out_of_range for an unknown game.
    std::string event_log(const std::string& game_id) const;
    std::uint64_t state_hash(const std::string& game_id) const;

    // Replays every game found in the data directory; returns how many.
    std::size_t load_saved_games();

private:
    struct Game;
    std::shared_ptr<Game> find(const std::string& game_id) const;
    void attach_persistence(const std::string& id, Game& game);

    std::filesystem::path data_dir_;
    mutable std::shared_mutex games_mutex_;
    std::map<std::string, std::shared_ptr<Game>> games_;
};

}  // namespace qpoker::server
