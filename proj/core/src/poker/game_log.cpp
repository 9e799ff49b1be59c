#include "qpoker/poker/game_log.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

#include "qpoker/circuit/serialize.hpp"

namespace qpoker {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

json seats_json(const std::vector<Seat>& seats) {
    json out = json::array();
    for (const auto& s : seats) out.push_back({{"name", s.name}, {"stack", s.stack}});
    return out;
}

std::vector<Seat> seats_from_json(const json& doc) {
    std::vector<Seat> seats;
    for (const auto& s : doc) seats.push_back({s.at("name").get<std::string>(), s.at("stack").get<std::int64_t>()});
    return seats;
}

std::vector<Seat> current_seats(const GameState& state) {
    std::vector<Seat> seats;
    for (const auto& p : state.players) seats.push_back({p.name, p.stack});
    return seats;
}

}  // namespace

json to_json(const GameConfig& c) {
    json deck = json::object();
    for (const auto& [kind, count] : c.deck) deck[std::string(to_string(kind))] = count;
    return {{"n_community_qubits", c.n_community_qubits},
            {"deck", deck},
            {"hand_size", c.hand_size},
            {"small_blind", c.small_blind},
            {"big_blind", c.big_blind},
            {"seed", c.seed},
            {"scoring", c.scoring == Scoring::single_shot ? "single_shot" : "expectation"},
            {"benchmark", c.benchmark}};
}

GameConfig game_config_from_json(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("game config must be an object");
    GameConfig c;
    try {
        c.n_community_qubits = doc.value("n_community_qubits", c.n_community_qubits);
        if (doc.contains("deck")) {
            c.deck.clear();
            for (const auto& [kind, count] : doc["deck"].items()) c.deck[parse_card_kind(kind)] = count.get<int>();
        }
        c.hand_size = doc.value("hand_size", c.hand_size);
        c.small_blind = doc.value("small_blind", c.small_blind);
        c.big_blind = doc.value("big_blind", c.big_blind);
        c.seed = doc.value("seed", c.seed);
        const std::string scoring = doc.value("scoring", std::string("single_shot"));
        if (scoring == "single_shot") c.scoring = Scoring::single_shot;
        else if (scoring == "expectation") c.scoring = Scoring::expectation;
        else throw std::invalid_argument("unknown scoring \"" + scoring + "\"");
        c.benchmark = doc.value("benchmark", false);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed game config: ") + e.what());
    }
    return c;
}

json to_json(const Card& card) {
    return {{"id", card.id}, {"kind", to_string(card.kind)}};
}

json to_json(const Placement& placement) {
    return {{"card", to_json(placement.card)}, {"targets", placement.targets}};
}

json to_json(const HandResult& r) {
    json scores = json::array();
    for (const auto& s : r.scores) scores.push_back({{"player", s.player}, {"outcome", s.outcome}, {"value", s.value}});
    json pots = json::array();
    for (const auto& p : r.pots) pots.push_back({{"amount", p.amount}, {"eligible", p.eligible}, {"winners", p.winners}});
    return {{"uncontested", r.uncontested}, {"scores", scores}, {"pots", pots}, {"payouts", r.payouts}};
}

json to_json(const QubitView& v) {
    return {{"qubit", v.qubit}, {"p1", v.p_one}, {"paired", v.paired}, {"color", v.color}};
}

json to_json(const GameState& s) {
    json players = json::array();
    for (const auto& p : s.players) {
        json hand = json::array();
        for (const auto& c : p.hand) hand.push_back(to_json(c));
        json placed = json::array();
        for (const auto& pl : p.placed) placed.push_back(to_json(pl));
        players.push_back({{"name", p.name},
                           {"stack", p.stack},
                           {"hand", hand},
                           {"sitting_out", p.sitting_out},
                           {"folded", p.folded},
                           {"all_in", p.all_in},
                           {"acted", p.acted},
                           {"bet", p.bet},
                           {"committed", p.committed},
                           {"placed", placed},
                           {"revealed", p.revealed}});
    }
    json undealt = json::array();
    for (const auto& c : s.undealt) undealt.push_back(to_json(c));
    return {{"config", to_json(s.config)},
            {"hand_number", s.hand_number},
            {"players", players},
            {"dealer", s.dealer},
            {"stage", to_string(s.stage)},
            {"revealed", s.revealed},
            {"community", to_json(s.community)},
            {"current_bet", s.current_bet},
            {"min_raise", s.min_raise},
            {"to_act", s.to_act},
            {"pot", s.pot()},
            {"undealt", undealt},
            {"result", s.result ? to_json(*s.result) : json(nullptr)}};
}

std::uint64_t state_hash(const GameState& state) {
    return fnv1a(to_json(state).dump());
}

Table::Table(GameConfig config, std::vector<Seat> seats, int dealer) : seats_(std::move(seats)) {
    state_ = new_hand(config, seats_, dealer, 0);
    record({{"type", "start"}, {"config", to_json(config)}, {"seats", seats_json(seats_)}, {"dealer", dealer}});
    record_result_if_complete(false);
}

Table Table::benchmark(GameConfig config, std::vector<Seat> seats) {
    config.benchmark = true;
    Table t;
    t.seats_ = std::move(seats);
    t.state_ = benchmark_hand(config, t.seats_);
    t.record({{"type", "start"}, {"config", to_json(config)}, {"seats", seats_json(t.seats_)}, {"dealer", 0}});
    return t;
}

void Table::record(json event) {
    event["v"] = kSchemaVersion;
    event["seq"] = events_.size();
    events_.push_back(event);
    if (sink_) sink_(events_.back());
}

void Table::record_result_if_complete(bool was_complete) {
    if (!was_complete && state_.stage == Stage::complete && state_.result) {
        record({{"type", "result"}, {"hand", state_.hand_number}, {"result", to_json(*state_.result)}});
    }
}

void Table::act(int player, const Action& action) {
    const bool was_complete = state_.stage == Stage::complete;
    qpoker::act(state_, player, action);
    record({{"type", "act"}, {"player", player}, {"action", to_string(action.kind)}, {"amount", action.amount}});
    record_result_if_complete(was_complete);
}

void Table::place(int player, int card_id, std::vector<int> targets) {
    const json t = targets;
    place_gate(state_, player, card_id, std::move(targets));
    record({{"type", "place"}, {"player", player}, {"card", card_id}, {"targets", t}});
}

void Table::reveal(int player) {
    const bool was_complete = state_.stage == Stage::complete;
    qpoker::reveal(state_, player);
    record({{"type", "reveal"}, {"player", player}});
    record_result_if_complete(was_complete);
}

bool Table::can_continue() const {
    if (state_.config.benchmark) return false;
    int with_chips = 0;
    for (const auto& p : state_.players) with_chips += p.stack > 0 ? 1 : 0;
    return with_chips >= 2;
}

void Table::next_hand() {
    if (state_.stage != Stage::complete) throw IllegalAction("the current hand is still in play");
    if (!can_continue()) throw IllegalAction("fewer than two players have chips");
    seats_ = current_seats(state_);
    const int n = static_cast<int>(seats_.size());
    int dealer = state_.dealer;
    do {
        dealer = (dealer + 1) % n;
    } while (seats_[static_cast<std::size_t>(dealer)].stack == 0);
    state_ = new_hand(state_.config, seats_, dealer, state_.hand_number + 1);
    record({{"type", "next_hand"}, {"hand", state_.hand_number}, {"dealer", dealer}});
    record_result_if_complete(false);
}

std::string Table::jsonl() const {
    std::string out;
    for (const auto& e : events_) {
        out += e.dump();
        out += '\n';
    }
    return out;
}

Table Table::replay(std::span<const json> events) {
    if (events.empty() || events.front().value("type", "") != "start") {
        throw std::invalid_argument("event log must begin with a start event");
    }
    Table t;
    try {
        const json& start = events.front();
        const GameConfig config = game_config_from_json(start.at("config"));
        std::vector<Seat> seats = seats_from_json(start.at("seats"));
        if (config.benchmark) {
            t = benchmark(config, std::move(seats));
        } else {
            t = Table(config, std::move(seats), start.at("dealer").get<int>());
        }
        for (const auto& e : events.subspan(1)) {
            const std::string type = e.at("type").get<std::string>();
            if (type == "act") {
                t.act(e.at("player").get<int>(),
                      Action{parse_action_kind(e.at("action").get<std::string>()), e.value("amount", std::int64_t{0})});
            } else if (type == "place") {
                t.place(e.at("player").get<int>(), e.at("card").get<int>(), e.at("targets").get<std::vector<int>>());
            } else if (type == "reveal") {
                t.reveal(e.at("player").get<int>());
            } else if (type == "next_hand") {
                t.next_hand();
            } else if (type == "result") {
                if (!t.state_.result || to_json(*t.state_.result) != e.at("result")) {
                    throw std::runtime_error("replayed result differs from the recorded one at seq " +
                                             std::to_string(e.value("seq", -1)));
                }
            } else {
                throw std::invalid_argument("unknown event type \"" + type + "\"");
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed event: ") + e.what());
    }
    return t;
}

Table Table::replay_jsonl(std::istream& in) {
    std::vector<json> events;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            events.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("malformed JSON in event log: ") + e.what());
        }
    }
    return replay(events);
}

}  // namespace qpoker
