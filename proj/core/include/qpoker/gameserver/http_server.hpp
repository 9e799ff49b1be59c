#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "qpoker/gameserver/service.hpp"

namespace qpoker::server {

struct ServerOptions {
    std::string address = "127.0.0.1";
    unsigned short port = 8080;  // 0 picks a free port
    int threads = 1;
    bool stop_on_signals = false;  // SIGINT / SIGTERM end run()
    std::function<void(std::string_view)> log;  // optional diagnostics
};

// HTTP + WebSocket front end for a GameService.
//   POST /games            create a game, returns {"v":1,"id","tokens"}
//   GET  /games/{id}/log   JSON-lines event log
//   GET  /health
//   WS   /game/{id}        v1 session messages
class HttpServer {
public:
    HttpServer(GameService& service, ServerOptions options);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Binds and starts accepting. Returns the bound port.
    unsigned short start();
    // Serves until stop(); call after start().
    void run();
    void stop();

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

}  // namespace qpoker::server
