#include "commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qpoker/circuit/serialize.hpp"
#include "qpoker/device/device_model.hpp"
#include "qpoker/mitigation/calibration.hpp"
#include "qpoker/mitigation/richardson.hpp"
#include "qpoker/mitigation/zne.hpp"
#include "qpoker/noisesim/noise.hpp"
#include "qpoker/poker/bot.hpp"
#include "qpoker/qcore/simulate.hpp"
#include "qpoker/transpiler/transpiler.hpp"

namespace qpoker::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
    }
}

DeviceModel resolve_device(const std::string& spec) {
    if (spec == "qx2") return qx2_device();
    if (spec == "ourense") return ourense_device();
    return load_device_file(spec);
}

// Output file, or the given stream when the path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            out_ = &fallback;
            return;
        }
        file_.open(path);
        if (!file_) throw std::runtime_error("cannot write " + path);
        out_ = &file_;
    }
    std::ostream& operator*() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

void write_header(std::ostream& out, std::string_view command, const json& config) {
    fmt::print(out, "# qpoker {}\n# config_hash={}\n# config={}\n", command, config_hash(config), config.dump());
}

double sample_stderr(const Counts& counts) {
    const double mean = expectation_ones(counts);
    double ss = 0.0;
    const auto raw = counts.raw();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double d = std::popcount(i) - mean;
        ss += static_cast<double>(raw[i]) * d * d;
    }
    const auto n = static_cast<double>(counts.total());
    return n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> read_counts_csv(const fs::path& path, int& num_qubits) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    std::string line;
    num_qubits = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("outcome", 0) == 0) continue;
        std::stringstream ss(line);
        std::string bits, count;
        std::getline(ss, bits, ',');
        std::getline(ss, count, ',');
        if (num_qubits == 0) num_qubits = static_cast<int>(bits.size());
        if (static_cast<int>(bits.size()) != num_qubits) throw std::invalid_argument("inconsistent outcome widths in " + path.string());
        try {
            rows.emplace_back(parse_bit_string(bits), std::stoull(count));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("malformed counts row \"" + line + "\"");
        }
    }
    if (rows.empty()) throw std::invalid_argument("no counts in " + path.string());
    return rows;
}

std::string extrapolation_label(const std::vector<double>& rs, std::size_t k) {
    std::string label = "R(";
    for (std::size_t i = 0; i < k; ++i) label += fmt::format("{}E_{:g}", i ? "," : "", rs[i]);
    return label + ")";
}

}  // namespace

std::string config_hash(const json& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
    if (o.shots == 0) throw std::invalid_argument("--shots must be at least 1");
    Circuit circuit = load_circuit_file(o.circuit);
    json config{{"circuit", to_json(circuit)}, {"shots", o.shots}, {"seed", o.seed}, {"noisy", o.noisy}};

    Counts counts(circuit.num_qubits());
    if (o.noisy) {
        if (o.device.empty()) throw std::invalid_argument("--noisy needs --device");
        const DeviceModel device = resolve_device(o.device);
        config["device"] = to_json(device);
        if (!is_device_conformant(circuit, device)) circuit = transpile(circuit, device).circuit;
        counts = sample_noisy(circuit, device, NoiseConfig::from_device(device), o.shots, o.seed);
    } else {
        Rng rng(o.seed);
        counts = sample(run_circuit(circuit), o.shots, rng);
    }

    Sink sink(o.out, out);
    write_header(*sink, "simulate", config);
    *sink << "outcome,count,frequency\n";
    for (const auto& [bits, n] : counts.by_bit_string()) {
        fmt::print(*sink, "{},{},{:.6f}\n", bits, n, static_cast<double>(n) / static_cast<double>(counts.total()));
    }
    fmt::print(*sink, "# expectation={:.6f} stderr={:.6f}\n", expectation_ones(counts), sample_stderr(counts));
    if (!o.out.empty()) fmt::print(out, "expectation={:.6f} stderr={:.6f}\n", expectation_ones(counts), sample_stderr(counts));
}

void cmd_transpile(const TranspileOptions& o, std::ostream& out) {
    const Circuit circuit = load_circuit_file(o.circuit);
    const DeviceModel device = resolve_device(o.device);
    if (circuit.num_qubits() > device.num_qubits) {
        throw std::invalid_argument(fmt::format("circuit has {} qubits but device {} has {}", circuit.num_qubits(),
                                                device.name, device.num_qubits));
    }
    const TranspileResult r = transpile(circuit, device);
    const bool conformant = is_device_conformant(r.circuit, device);
    const bool equivalent = routed_fidelity(circuit, r) >= 1.0 - 1e-9;
    if (!o.out.empty()) save_circuit_file(r.circuit, o.out);
    fmt::print(out, "device={} cx={} depth={} swaps={} initial_layout={} final_layout={} conformant={} equivalence={}\n",
               device.name, r.stats.cx_count, r.stats.depth, r.stats.swaps_inserted,
               json(r.initial_layout.mapping()).dump(), json(r.final_layout.mapping()).dump(),
               conformant ? "PASS" : "FAIL", equivalent ? "PASS" : "FAIL");
    if (!conformant || !equivalent) throw std::runtime_error("transpiled circuit failed verification");
}

void cmd_zne(const ZneOptions& o, std::ostream& out) {
    const fs::path config_path = o.config;
    const json doc = read_json_file(config_path);
    if (!doc.is_object() || !doc.contains("circuit")) throw std::invalid_argument("experiment config needs \"circuit\"");

    const fs::path base = config_path.parent_path();
    const auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
    Circuit circuit = load_circuit_file(resolve(doc["circuit"].get<std::string>()));
    const std::string device_spec = doc.value("device", std::string("qx2"));
    const DeviceModel device = resolve_device(device_spec == "qx2" || device_spec == "ourense" ? device_spec
                                                                                             : resolve(device_spec).string());
    const NoiseConfig noise = noise_from_json(doc.value("noise", json{{"cx_pauli", "device"}, {"readout", "device"}}), device);

    ZneConfig cfg;
    cfg.rs = doc.value("rs", cfg.rs);
    cfg.reps = doc.value("reps", cfg.reps);
    cfg.shots = doc.value("shots", cfg.shots);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.use_filter = doc.value("use_filter", false);
    cfg.twirl = doc.value("twirl", true);
    cfg.calibration_shots = doc.value("calibration_shots", cfg.calibration_shots);
    if (o.paper_scale) {
        cfg.reps = 1024;
        cfg.shots = 8192;
    }
    if (o.reps) cfg.reps = *o.reps;
    if (o.shots) cfg.shots = *o.shots;
    if (o.seed) cfg.seed = *o.seed;
    cfg.threads = o.threads;
    validate_amplification_factors(cfg.rs);

    if (!is_device_conformant(circuit, device)) {
        if (!doc.value("transpile", true)) throw std::invalid_argument("circuit is not device-conformant");
        circuit = transpile(circuit, device).circuit;
    }

    const json effective{{"circuit", to_json(circuit)}, {"device", to_json(device)}, {"noise", to_json(noise)},
                         {"rs", cfg.rs},  {"reps", cfg.reps},  {"shots", cfg.shots}, {"seed", cfg.seed},
                         {"use_filter", cfg.use_filter}, {"twirl", cfg.twirl}};
    const auto start = std::chrono::steady_clock::now();
    const ZneResult r = zne_pipeline(circuit, device, noise, cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    spdlog::info("zne: {} levels x {} reps x {} shots in {:.1f}s", cfg.rs.size(), cfg.reps, cfg.shots, seconds);

    std::ostringstream summary, report, series;
    write_header(summary, "zne summary", effective);
    summary << "r,mean,stderr\n";
    for (const auto& l : r.levels) fmt::print(summary, "{:g},{:.6f},{:.6f}\n", l.r, l.mean, l.stderr);

    write_header(report, "zne report", effective);
    report << "quantity,value\n";
    for (const auto& l : r.levels) fmt::print(report, "E_{:g},{:.6f}\n", l.r, l.mean);
    for (std::size_t k = 2; k <= r.partial.size(); ++k) {
        fmt::print(report, "\"{}\",{:.6f}\n", extrapolation_label(cfg.rs, k), r.partial[k - 1]);
    }
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
        fmt::print(report, "c_{:g},{:.10g}\n", cfg.rs[i], r.coefficients[i]);
    }
    fmt::print(report, "E_star,{:.6f}\nE_star_stderr,{:.6f}\n", r.extrapolated, r.extrapolated_stderr);

    if (o.out.empty()) {
        out << summary.str() << report.str();
        return;
    }
    fs::create_directories(o.out);
    write_header(series, "zne series", effective);
    series << "r,rep,expectation\n";
    for (const auto& l : r.levels) {
        for (std::size_t i = 0; i < l.expectations.size(); ++i) fmt::print(series, "{:g},{},{:.6f}\n", l.r, i, l.expectations[i]);
    }
    std::ofstream(fs::path(o.out) / "series.csv") << series.str();
    std::ofstream(fs::path(o.out) / "summary.csv") << summary.str();
    std::ofstream(fs::path(o.out) / "report.csv") << report.str();
    out << report.str();
}

void cmd_calibrate(const CalibrateOptions& o, std::ostream& out) {
    if (o.shots == 0) throw std::invalid_argument("--shots must be at least 1");
    const DeviceModel device = resolve_device(o.device);
    const NoiseConfig noise = o.noise.empty() ? NoiseConfig::from_device(device) : noise_from_json(read_json_file(o.noise), device);
    const int n = o.qubits == 0 ? device.num_qubits : o.qubits;
    if (n < 1 || n > device.num_qubits) {
        throw std::invalid_argument(fmt::format("--qubits must be in [1, {}]", device.num_qubits));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::uint64_t job = 0;
    const MeasureFn measure = [&](const Circuit& prep, std::uint64_t shots) {
        spdlog::info("calibration preparation {}/{}: |{}>", job + 1, dim, bit_string(job, n));
        Circuit wide(device.num_qubits, prep.name());
        for (const auto& g : prep.ops()) wide.append(g);
        const Counts full = sample_noisy(wide, device, noise, shots, fork_seed(o.seed, job++));
        Counts reduced(n);
        const auto raw = full.raw();
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i]) reduced.add(i & (dim - 1), raw[i]);
        }
        return reduced;
    };
    const CalibrationMatrix cal = build_calibration(n, measure, o.shots);

    json p = json::array();
    for (Eigen::Index i = 0; i < cal.p.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < cal.p.cols(); ++j) row.push_back(cal.p(i, j));
        p.push_back(row);
    }
    const json config{{"device", to_json(device)}, {"noise", to_json(noise)}, {"qubits", n}, {"shots", o.shots}, {"seed", o.seed}};
    const json doc{{"num_qubits", n}, {"config_hash", config_hash(config)}, {"shots", o.shots}, {"p", p}};
    Sink sink(o.out, out);
    *sink << doc.dump() << '\n';
    if (!o.heatmap.empty()) {
        std::ofstream heat(o.heatmap);
        if (!heat) throw std::runtime_error("cannot write " + o.heatmap);
        write_header(heat, "calibrate heatmap", config);
        heat << "prepared,observed,probability\n";
        for (std::uint64_t j = 0; j < dim; ++j) {
            for (std::uint64_t i = 0; i < dim; ++i) {
                fmt::print(heat, "{},{},{:.6f}\n", bit_string(j, n), bit_string(i, n),
                           cal.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            }
        }
    }
}

void cmd_filter(const FilterOptions& o, std::ostream& out) {
    const json doc = read_json_file(o.calibration);
    CalibrationMatrix cal;
    try {
        cal.num_qubits = doc.at("num_qubits").get<int>();
        const auto rows = doc.at("p").get<std::vector<std::vector<double>>>();
        cal.p = Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw std::invalid_argument("calibration matrix is not square");
            for (std::size_t j = 0; j < rows.size(); ++j) cal.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed calibration file: ") + e.what());
    }
    validate(cal);

    int width = 0;
    const auto rows = read_counts_csv(o.counts, width);
    if (width != cal.num_qubits) {
        throw std::invalid_argument(fmt::format("counts are {}-qubit but calibration is {}-qubit", width, cal.num_qubits));
    }
    std::vector<double> noisy(std::size_t{1} << width, 0.0);
    double total = 0.0;
    for (const auto& [outcome, n] : rows) {
        noisy[outcome] += static_cast<double>(n);
        total += static_cast<double>(n);
    }
    if (total <= 0.0) throw std::invalid_argument("counts sum to zero");
    for (double& v : noisy) v /= total;
    const auto filtered = apply_filter(cal, noisy);

    Sink sink(o.out, out);
    write_header(*sink, "filter", {{"calibration", config_hash(doc)}, {"counts", config_hash(json(rows))}});
    fmt::print(*sink, "# condition_number={:.6g}\n", condition_number(cal));
    *sink << "outcome,noisy,filtered\n";
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        if (noisy[i] == 0.0 && filtered[i] < 1e-12) continue;
        fmt::print(*sink, "{},{:.6f},{:.6f}\n", bit_string(i, width), noisy[i], filtered[i]);
    }
    fmt::print(*sink, "# expectation noisy={:.6f} filtered={:.6f}\n", expectation_ones(noisy), expectation_ones(filtered));
}

void cmd_play_bot(const PlayBotOptions& o, std::ostream& out) {
    if (o.hands < 1) throw std::invalid_argument("--hands must be at least 1");
    if (o.players < 2) throw std::invalid_argument("--players must be at least 2");
    if (o.stack < 1) throw std::invalid_argument("--stack must be positive");
    GameConfig config;
    config.seed = o.seed;
    std::vector<Seat> seats;
    for (int i = 0; i < o.players; ++i) seats.push_back({fmt::format("bot{}", i), o.stack});
    Table table(config, seats);
    Rng rng(fork_seed(o.seed, 99));
    const std::int64_t chips = table.state().total_chips();
    int hands = 0;
    int showdowns = 0;
    while (true) {
        play_random_hand(table, rng);
        ++hands;
        if (!table.state().result->uncontested) ++showdowns;
        if (table.state().total_chips() != chips) throw std::runtime_error(fmt::format("chip count changed in hand {}", hands));
        if (hands >= o.hands || !table.can_continue()) break;
        table.next_hand();
    }
    if (!o.out.empty()) {
        std::ofstream log(o.out);
        if (!log) throw std::runtime_error("cannot write " + o.out);
        log << table.jsonl();
    }
    fmt::print(out, "hands={} showdowns={} chips={} state_hash={:016x}\n", hands, showdowns, chips, table.hash());
    for (const auto& p : table.state().players) fmt::print(out, "{},{}\n", p.name, p.stack);
}

int run(int argc, char** argv) {
    CLI::App app{"Quantum poker engine and error-mitigation experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    std::string out;
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--out", out, "Output file or directory");

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Sample a circuit and report the number-operator expectation");
    simulate->add_option("circuit", sim.circuit, "Circuit JSON file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--shots", sim.shots, "Shots")->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_option("--device", sim.device, "Device name (qx2, ourense) or file");
    simulate->add_flag("--noisy", sim.noisy, "Sample under the device's noise model");

    TranspileOptions tr;
    auto* transpile_cmd = app.add_subcommand("transpile", "Route a circuit onto a device coupling map");
    transpile_cmd->add_option("circuit", tr.circuit, "Circuit JSON file")->required()->check(CLI::ExistingFile);
    transpile_cmd->add_option("--device", tr.device, "Device name (qx2, ourense) or file")->capture_default_str();

    ZneOptions zne;
    int reps = 0;
    std::uint64_t zne_shots = 0;
    auto* zne_cmd = app.add_subcommand("zne", "Twirl, amplify and extrapolate to zero noise");
    zne_cmd->add_option("config", zne.config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
    auto* reps_opt = zne_cmd->add_option("--reps", reps, "Repetitions per amplification factor")->check(CLI::PositiveNumber);
    auto* shots_opt = zne_cmd->add_option("--shots", zne_shots, "Shots per repetition")->check(CLI::PositiveNumber);
    zne_cmd->add_flag("--paper-scale", zne.paper_scale, "1024 repetitions of 8192 shots");
    zne_cmd->add_option("--threads", zne.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1, 64));

    CalibrateOptions cal;
    auto* calibrate = app.add_subcommand("calibrate", "Measure the readout calibration matrix");
    calibrate->add_option("--device", cal.device, "Device name (qx2, ourense) or file")->capture_default_str();
    calibrate->add_option("--noise", cal.noise, "Noise config JSON (default: device rates)");
    calibrate->add_option("--qubits,-n", cal.qubits, "Qubits to calibrate (default: device width)");
    calibrate->add_option("--shots", cal.shots, "Shots per preparation")->capture_default_str()->check(CLI::PositiveNumber);
    calibrate->add_option("--heatmap", cal.heatmap, "Write prepared,observed,probability CSV");

    FilterOptions filt;
    auto* filter = app.add_subcommand("filter", "Apply a measurement filter to a counts CSV");
    filter->add_option("--calibration", filt.calibration, "Calibration JSON")->required()->check(CLI::ExistingFile);
    filter->add_option("counts", filt.counts, "Counts CSV (outcome,count)")->required()->check(CLI::ExistingFile);

    PlayBotOptions bot;
    auto* play = app.add_subcommand("play-bot", "Play random legal hands and check chip conservation");
    play->add_option("--hands", bot.hands, "Hands to play")->capture_default_str();
    play->add_option("--players", bot.players, "Seats")->capture_default_str();
    play->add_option("--stack", bot.stack, "Starting stack")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidationError;
    }

    auto logger = spdlog::get("qpoker");
    if (!logger) logger = spdlog::stderr_color_mt("qpoker");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");

    try {
        if (simulate->parsed()) {
            sim.seed = seed;
            sim.out = out;
            cmd_simulate(sim, std::cout);
        } else if (transpile_cmd->parsed()) {
            tr.out = out;
            cmd_transpile(tr, std::cout);
        } else if (zne_cmd->parsed()) {
            if (app.count("--seed")) zne.seed = seed;
            if (reps_opt->count()) zne.reps = reps;
            if (shots_opt->count()) zne.shots = zne_shots;
            zne.out = out;
            cmd_zne(zne, std::cout);
        } else if (calibrate->parsed()) {
            cal.seed = seed;
            cal.out = out;
            cmd_calibrate(cal, std::cout);
        } else if (filter->parsed()) {
            filt.out = out;
            cmd_filter(filt, std::cout);
        } else if (play->parsed()) {
            bot.seed = seed;
            bot.out = out;
            cmd_play_bot(bot, std::cout);
        }
    } catch (const std::invalid_argument& e) {
        spdlog::error("{}", e.what());
        return kValidationError;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kRuntimeError;
    }
    return kOk;
}

}  // namespace qpoker::cli
