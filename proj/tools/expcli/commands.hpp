#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace qpoker::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kRuntimeError = 2;

struct SimulateOptions {
    std::string circuit;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 0;
    std::string device;  // with noisy: builtin name or device file
    bool noisy = false;
    std::string out;  // CSV path; stdout when empty
};

struct TranspileOptions {
    std::string circuit;
    std::string device = "qx2";
    std::string out;  // routed circuit JSON
};

struct ZneOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::optional<std::uint64_t> shots;
    bool paper_scale = false;
    int threads = 1;
    std::string out;  // directory for series.csv, summary.csv, report.csv
};

struct CalibrateOptions {
    std::string device = "qx2";
    std::string noise;  // noise config file; device rates when empty
    int qubits = 0;     // 0 means the device width
    std::uint64_t shots = 8192;
    std::uint64_t seed = 0;
    std::string out;      // calibration JSON
    std::string heatmap;  // long-format CSV
};

struct FilterOptions {
    std::string calibration;
    std::string counts;  // CSV with outcome,count columns
    std::string out;
};

struct PlayBotOptions {
    int hands = 100;
    int players = 3;
    std::int64_t stack = 100;
    std::uint64_t seed = 0;
    std::string out;  // JSON-lines event log
};

// Commands throw std::invalid_argument for bad input and other exceptions
// for runtime failures; run() maps them to exit codes.
void cmd_simulate(const SimulateOptions& o, std::ostream& out);
void cmd_transpile(const TranspileOptions& o, std::ostream& out);
void cmd_zne(const ZneOptions& o, std::ostream& out);
void cmd_calibrate(const CalibrateOptions& o, std::ostream& out);
void cmd_filter(const FilterOptions& o, std::ostream& out);
void cmd_play_bot(const PlayBotOptions& o, std::ostream& out);

// 16 hex digits of FNV-1a over the canonical JSON dump.
std::string config_hash(const nlohmann::json& config);

int run(int argc, char** argv);

}  // namespace qpoker::cli
