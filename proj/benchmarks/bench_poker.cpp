#include <qpoker/poker/bot.hpp>
#include <qpoker/poker/game.hpp>
#include <qpoker/poker/game_log.hpp>

#include <benchmark/benchmark.h>

using namespace qpoker;

static void BM_RandomHand(benchmark::State& state) {
    const int players = static_cast<int>(state.range(0));
    std::vector<Seat> seats;
    for (int i = 0; i < players; ++i) seats.push_back({"p" + std::to_string(i), 1000});
    Rng rng(7);
    GameConfig cfg;
    for (auto _ : state) {
        ++cfg.seed;
        Table table(cfg, seats);
        benchmark::DoNotOptimize(play_random_hand(table, rng));
    }
}
BENCHMARK(BM_RandomHand)->Arg(2)->Arg(6);

static void BM_Preview(benchmark::State& state) {
    GameConfig cfg;
    cfg.seed = 11;
    const std::vector<Seat> seats{{"a", 100}, {"b", 100}};
    GameState s = new_hand(cfg, seats, 0);
    while (s.stage != Stage::showdown) {
        const auto la = legal_actions(s, s.to_act);
        act(s, s.to_act, la.check ? Action::check() : Action::call());
    }
    for (auto _ : state) benchmark::DoNotOptimize(preview(s, 0));
}
BENCHMARK(BM_Preview);
