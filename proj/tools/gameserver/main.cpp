#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "qpoker/gameserver/http_server.hpp"
#include "qpoker/gameserver/service.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Quantum poker game server"};
    std::string address = "127.0.0.1";
    unsigned short port = 8080;
    std::string data_dir = "games";
    int threads = 1;
    app.add_option("--address", address, "Listen address")->capture_default_str();
    app.add_option("--port", port, "Listen port (0 picks one)")->capture_default_str();
    app.add_option("--data-dir", data_dir, "Directory for JSON-lines game logs; empty disables persistence")
        ->capture_default_str();
    app.add_option("--threads", threads, "I/O threads")->capture_default_str()->check(CLI::Range(1, 64));
    CLI11_PARSE(app, argc, argv);

    try {
        qpoker::server::GameService service(data_dir);
        if (const auto n = service.load_saved_games()) spdlog::info("restored {} game(s) from {}", n, data_dir);

        qpoker::server::ServerOptions options;
        options.address = address;
        options.port = port;
        options.threads = threads;
        options.stop_on_signals = true;
        options.log = [](std::string_view text) { spdlog::info("{}", text); };
        qpoker::server::HttpServer server(service, options);
        const auto bound = server.start();
        spdlog::info("listening on {}:{}", address, bound);
        server.run();
        spdlog::info("shutting down");
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 2;
    }
    return 0;
}
