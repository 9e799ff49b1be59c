#include "qpoker/gameserver/service.hpp"

#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qpoker::server {

using nlohmann::json;

struct GameService::Game {
    std::mutex mutex;
    Table table;
    std::vector<std::string> tokens;
    std::uint64_t next_seq = 0;
    std::ofstream log;

    Game(Table t, std::vector<std::string> tok) : table(std::move(t)), tokens(std::move(tok)) {}
};

namespace {

std::string random_hex(std::size_t bytes) {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::string out;
    char chunk[17];
    for (std::size_t i = 0; i < bytes; i += 8) {
        std::snprintf(chunk, sizeof chunk, "%016llx", static_cast<unsigned long long>(rng()));
        out += chunk;
    }
    return out.substr(0, bytes * 2);
}

json message(std::string_view type, const std::string& game_id, json payload) {
    return {{"v", kProtocolVersion}, {"type", type}, {"game", game_id}, {"payload", std::move(payload)}};
}

json error_message(const std::string& game_id, std::string_view code, const std::string& text) {
    return message("error", game_id, {{"code", code}, {"message", text}});
}

json legal_json(const LegalActions& la) {
    return {{"fold", la.fold},         {"check", la.check},
            {"call", la.call},         {"call_amount", la.call_amount},
            {"raise", la.raise},       {"min_raise_to", la.min_raise_to},
            {"max_raise_to", la.max_raise_to}};
}

json preview_json(const std::vector<QubitView>& views) {
    json out = json::array();
    for (const auto& v : views) out.push_back(to_json(v));
    return out;
}

std::vector<Placement> staged_placements(const GameState& state, int seat, const json& staged) {
    std::vector<Placement> out;
    std::vector<int> used;
    for (const auto& item : staged) {
        const int card = item.at("card").get<int>();
        if (std::find(used.begin(), used.end(), card) != used.end()) {
            throw IllegalAction("card " + std::to_string(card) + " staged twice");
        }
        used.push_back(card);
        out.push_back(resolve_placement(state, seat, card, item.at("targets").get<std::vector<int>>()));
    }
    return out;
}

json showdown_payload(const GameState& state) {
    json placements = json::object();
    for (std::size_t i = 0; i < state.players.size(); ++i) {
        const auto& p = state.players[i];
        if (p.folded) continue;
        json list = json::array();
        for (const auto& pl : p.placed) list.push_back(to_json(pl));
        placements[std::to_string(i)] = list;
    }
    return {{"hand", state.hand_number}, {"result", to_json(*state.result)}, {"placements", placements}};
}

}  // namespace

json redacted_view(const GameState& s, int seat) {
    json players = json::array();
    for (std::size_t i = 0; i < s.players.size(); ++i) {
        const auto& p = s.players[i];
        players.push_back({{"seat", i},
                           {"name", p.name},
                           {"stack", p.stack},
                           {"bet", p.bet},
                           {"committed", p.committed},
                           {"folded", p.folded},
                           {"all_in", p.all_in},
                           {"sitting_out", p.sitting_out},
                           {"cards", p.hand.size()},
                           {"placed", p.placed.size()},
                           {"revealed", p.revealed}});
    }
    const auto& me = s.players.at(static_cast<std::size_t>(seat));
    json hand = json::array();
    for (const auto& c : me.hand) hand.push_back(to_json(c));
    json placed = json::array();
    for (const auto& pl : me.placed) placed.push_back(to_json(pl));

    json view{{"hand_number", s.hand_number},
              {"stage", to_string(s.stage)},
              {"benchmark", s.config.benchmark},
              {"dealer", s.dealer},
              {"pot", s.pot()},
              {"current_bet", s.current_bet},
              {"min_raise", s.min_raise},
              {"to_act", s.to_act},
              {"revealed", s.revealed},
              {"qubits", s.config.n_community_qubits},
              {"you", seat},
              {"players", players},
              {"hand", hand},
              {"placements", placed}};
    view["preview"] = me.folded ? json::array() : preview_json(preview(s, seat));
    if (seat == s.to_act) view["legal"] = legal_json(legal_actions(s, seat));
    if (s.result) view["result"] = to_json(*s.result);
    return view;
}

GameService::GameService(std::filesystem::path data_dir) : data_dir_(std::move(data_dir)) {
    if (!data_dir_.empty()) std::filesystem::create_directories(data_dir_);
}

std::shared_ptr<GameService::Game> GameService::find(const std::string& game_id) const {
    const std::shared_lock lock(games_mutex_);
    const auto it = games_.find(game_id);
    return it == games_.end() ? nullptr : it->second;
}

void GameService::attach_persistence(const std::string& id, Game& game) {
    if (data_dir_.empty()) return;
    game.log.open(data_dir_ / (id + ".jsonl"), std::ios::app);
    if (!game.log) throw std::runtime_error("cannot open event log for game " + id);
    game.table.set_event_sink([&log = game.log](const json& event) {
        log << event.dump() << '\n';
        log.flush();
    });
}

GameCreated GameService::create_game(const json& request) {
    if (!request.is_object() || !request.contains("players") || !request["players"].is_array()) {
        throw std::invalid_argument("request needs a \"players\" array");
    }
    std::vector<Seat> seats;
    for (const auto& p : request["players"]) {
        if (!p.is_object()) throw std::invalid_argument("player entries must be objects");
        seats.push_back({p.value("name", "player" + std::to_string(seats.size())), p.value("stack", std::int64_t{100})});
    }
    const GameConfig config = game_config_from_json(request.value("config", json::object()));
    const bool benchmark = request.value("benchmark", config.benchmark);
    if (!benchmark && seats.size() < 2) throw std::invalid_argument("a game needs at least two players");
    const int dealer = request.value("dealer", 0);

    Table table = benchmark ? Table::benchmark(config, seats) : Table(config, seats, dealer);
    GameCreated created{random_hex(8), {}};
    for (std::size_t i = 0; i < seats.size(); ++i) created.tokens.push_back(random_hex(16));

    auto game = std::make_shared<Game>(std::move(table), created.tokens);
    if (!data_dir_.empty()) {
        std::ofstream meta(data_dir_ / (created.id + ".meta.json"));
        meta << json{{"v", kProtocolVersion}, {"id", created.id}, {"tokens", created.tokens}}.dump() << '\n';
        attach_persistence(created.id, *game);
        for (const auto& e : game->table.events()) game->log << e.dump() << '\n';
        game->log.flush();
    }
    const std::unique_lock lock(games_mutex_);
    games_.emplace(created.id, std::move(game));
    return created;
}

std::optional<int> GameService::authenticate(const std::string& game_id, const std::string& token) const {
    const auto game = find(game_id);
    if (!game) return std::nullopt;
    for (std::size_t i = 0; i < game->tokens.size(); ++i) {
        if (game->tokens[i] == token) return static_cast<int>(i);
    }
    return std::nullopt;
}

bool GameService::has_game(const std::string& game_id) const {
    return find(game_id) != nullptr;
}

std::vector<std::string> GameService::game_ids() const {
    const std::shared_lock lock(games_mutex_);
    std::vector<std::string> ids;
    for (const auto& [id, g] : games_) ids.push_back(id);
    return ids;
}

json GameService::state_message(const std::string& game_id, int seat) const {
    const auto game = find(game_id);
    if (!game) throw std::out_of_range("unknown game " + game_id);
    const std::lock_guard lock(game->mutex);
    return message("state", game_id, redacted_view(game->table.state(), seat));
}

std::string GameService::event_log(const std::string& game_id) const {
    const auto game = find(game_id);
    if (!game) throw std::out_of_range("unknown game " + game_id);
    const std::lock_guard lock(game->mutex);
    return game->table.jsonl();
}

std::uint64_t GameService::state_hash(const std::string& game_id) const {
    const auto game = find(game_id);
    if (!game) throw std::out_of_range("unknown game " + game_id);
    const std::lock_guard lock(game->mutex);
    return game->table.hash();
}

std::vector<Envelope> GameService::handle(const std::string& game_id, const json& msg) {
    const auto game = find(game_id);
    if (!game) return {{kSender, error_message(game_id, "unknown_game", "unknown game " + game_id)}};
    if (!msg.is_object() || msg.value("v", 0) != kProtocolVersion) {
        return {{kSender, error_message(game_id, "bad_request", "expected a v1 message object")}};
    }
    const auto seat = authenticate(game_id, msg.value("token", std::string{}));
    if (!seat) return {{kSender, error_message(game_id, "auth", "invalid token")}};

    const std::string type = msg.value("type", std::string{});
    const json payload = msg.value("payload", json::object());
    const std::lock_guard lock(game->mutex);
    Table& table = game->table;
    const int players = static_cast<int>(table.state().players.size());

    std::vector<Envelope> out;
    auto stamp = [&](json m) {
        m["seq"] = game->next_seq++;
        return m;
    };
    auto send_state = [&](int to) { out.push_back({to, stamp(message("state", game_id, redacted_view(table.state(), to)))}); };
    auto broadcast_state = [&] {
        for (int p = 0; p < players; ++p) send_state(p);
    };
    auto broadcast_showdown_if_done = [&](bool was_complete) {
        if (was_complete || table.state().stage != Stage::complete) return;
        const json body = showdown_payload(table.state());
        for (int p = 0; p < players; ++p) out.push_back({p, stamp(message("showdown", game_id, body))});
    };

    try {
        const bool was_complete = table.state().stage == Stage::complete;
        if (type == "join" || type == "state") {
            send_state(*seat);
        } else if (type == "act") {
            const std::string action = payload.at("action").get<std::string>();
            if (action == "next_hand") {
                table.next_hand();
            } else {
                table.act(*seat, Action{parse_action_kind(action), payload.value("amount", std::int64_t{0})});
            }
            broadcast_state();
            broadcast_showdown_if_done(was_complete);
        } else if (type == "place") {
            table.place(*seat, payload.at("card").get<int>(), payload.at("targets").get<std::vector<int>>());
            send_state(*seat);
        } else if (type == "preview") {
            const auto staged = staged_placements(table.state(), *seat, payload.value("staged", json::array()));
            out.push_back({*seat, stamp(message("preview", game_id,
                                                {{"qubits", preview_json(preview(table.state(), *seat, staged))},
                                                 {"staged", staged.size()}}))});
        } else if (type == "reveal") {
            table.reveal(*seat);
            broadcast_state();
            broadcast_showdown_if_done(was_complete);
        } else {
            return {{*seat, error_message(game_id, "bad_request", "unsupported message type \"" + type + "\"")}};
        }
    } catch (const IllegalAction& e) {
        return {{*seat, error_message(game_id, "illegal_action", e.what())}};
    } catch (const std::invalid_argument& e) {
        return {{*seat, error_message(game_id, "bad_request", e.what())}};
    } catch (const json::exception& e) {
        return {{*seat, error_message(game_id, "bad_request", e.what())}};
    }
    return out;
}

std::size_t GameService::load_saved_games() {
    if (data_dir_.empty()) return 0;
    std::size_t loaded = 0;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir_)) {
        const auto path = entry.path();
        if (path.extension() != ".json" || path.stem().extension() != ".meta") continue;
        std::ifstream meta_in(path);
        const json meta = json::parse(meta_in);
        const std::string id = meta.at("id").get<std::string>();
        if (has_game(id)) continue;
        std::ifstream log_in(data_dir_ / (id + ".jsonl"));
        if (!log_in) continue;
        auto game = std::make_shared<Game>(Table::replay_jsonl(log_in), meta.at("tokens").get<std::vector<std::string>>());
        attach_persistence(id, *game);
        const std::unique_lock lock(games_mutex_);
        games_.emplace(id, std::move(game));
        ++loaded;
    }
    return loaded;
}

}  // namespace qpoker::server
