#include "qpoker/gameserver/http_server.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace qpoker::server {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

namespace {

// "/games/abc/log" -> {"games", "abc", "log"}
std::vector<std::string> split_path(std::string_view target) {
    target = target.substr(0, target.find('?'));
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < target.size()) {
        while (i < target.size() && target[i] == '/') ++i;
        const std::size_t j = target.find('/', i);
        if (i < target.size()) parts.emplace_back(target.substr(i, j == std::string_view::npos ? j : j - i));
        if (j == std::string_view::npos) break;
        i = j;
    }
    return parts;
}

class WsSession;

}  // namespace

struct HttpServer::Impl {
    GameService& service;
    ServerOptions options;
    net::io_context ioc;
    tcp::acceptor acceptor{ioc};
    net::signal_set signals{ioc};
    std::mutex hub_mutex;
    std::map<std::pair<std::string, int>, std::vector<std::weak_ptr<WsSession>>> hub;

    Impl(GameService& s, ServerOptions o) : service(s), options(std::move(o)), ioc(std::max(1, options.threads)) {}

    void log(std::string_view text) const {
        if (options.log) options.log(text);
    }
    void subscribe(const std::string& game, int seat, const std::shared_ptr<WsSession>& session);
    void deliver(const std::string& game, int seat, const std::string& text);
    void accept();
};

namespace {

class WsSession : public std::enable_shared_from_this<WsSession> {
public:
    WsSession(tcp::socket&& socket, HttpServer::Impl& server, std::string game)
        : ws_(std::move(socket)), server_(server), game_(std::move(game)) {}

    void run(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
            if (ec) return self->server_.log("websocket accept: " + ec.message());
            self->read();
        });
    }

    void send(std::string text) {
        net::post(ws_.get_executor(), [self = shared_from_this(), text = std::move(text)]() mutable {
            self->queue_.push_back(std::move(text));
            if (self->queue_.size() == 1) self->write();
        });
    }

private:
    void read() {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return;
            const std::string text = beast::buffers_to_string(self->buffer_.data());
            self->buffer_.consume(self->buffer_.size());
            self->process(text);
            self->read();
        });
    }

    void write() {
        ws_.text(true);
        ws_.async_write(net::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return self->server_.log("websocket write: " + ec.message());
            self->queue_.pop_front();
            if (!self->queue_.empty()) self->write();
        });
    }

    void process(const std::string& text) {
        json msg;
        try {
            msg = json::parse(text);
        } catch (const json::parse_error&) {
            send(json{{"v", kProtocolVersion}, {"type", "error"}, {"game", game_},
                      {"payload", {{"code", "bad_request"}, {"message", "malformed JSON"}}}}.dump());
            return;
        }
        if (msg.is_object() && msg.contains("token") && msg["token"].is_string()) {
            if (const auto seat = server_.service.authenticate(game_, msg["token"].get<std::string>())) {
                if (seat_ != *seat) {
                    seat_ = *seat;
                    server_.subscribe(game_, seat_, shared_from_this());
                }
            }
        }
        for (auto& env : server_.service.handle(game_, msg)) {
            if (env.seat == kSender) send(env.message.dump());
            else server_.deliver(game_, env.seat, env.message.dump());
        }
    }

    websocket::stream<beast::tcp_stream> ws_;
    HttpServer::Impl& server_;
    std::string game_;
    int seat_ = -1;
    beast::flat_buffer buffer_;
    std::deque<std::string> queue_;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket&& socket, HttpServer::Impl& server) : stream_(std::move(socket)), server_(server) {}

    void run() { read(); }

private:
    void read() {
        req_ = {};
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec == http::error::end_of_stream) {
                self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                return;
            }
            if (ec) return;
            self->dispatch();
        });
    }

    void dispatch() {
        const auto parts = split_path(std::string_view(req_.target().data(), req_.target().size()));
        if (websocket::is_upgrade(req_)) {
            // Unknown ids still upgrade so the client gets an unknown_game error message.
            if (parts.size() == 2 && parts[0] == "game") {
                stream_.expires_never();
                std::make_shared<WsSession>(stream_.release_socket(), server_, parts[1])->run(std::move(req_));
                return;
            }
            return respond(http::status::not_found, "application/json", R"({"error":"not found"})");
        }
        if (req_.method() == http::verb::post && parts.size() == 1 && parts[0] == "games") {
            try {
                const auto created = server_.service.create_game(json::parse(req_.body()));
                server_.log("created game " + created.id);
                return respond(http::status::created, "application/json",
                               json{{"v", kProtocolVersion}, {"id", created.id}, {"tokens", created.tokens}}.dump());
            } catch (const std::exception& e) {
                return respond(http::status::bad_request, "application/json", json{{"error", e.what()}}.dump());
            }
        }
        if (req_.method() == http::verb::get && parts.size() == 3 && parts[0] == "games" && parts[2] == "log") {
            if (!server_.service.has_game(parts[1])) {
                return respond(http::status::not_found, "application/json", R"({"error":"unknown game"})");
            }
            return respond(http::status::ok, "application/x-ndjson", server_.service.event_log(parts[1]));
        }
        if (req_.method() == http::verb::get && parts.size() == 1 && parts[0] == "health") {
            return respond(http::status::ok, "text/plain", "ok\n");
        }
        respond(http::status::not_found, "application/json", R"({"error":"not found"})");
    }

    void respond(http::status status, std::string_view type, std::string body) {
        auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
        res->set(http::field::content_type, std::string(type));
        res->keep_alive(req_.keep_alive());
        res->body() = std::move(body);
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
            if (ec) return;
            if (!res->keep_alive()) {
                self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                return;
            }
            self->read();
        });
    }

    beast::tcp_stream stream_;
    HttpServer::Impl& server_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
};

}  // namespace

void HttpServer::Impl::subscribe(const std::string& game, int seat, const std::shared_ptr<WsSession>& session) {
    const std::lock_guard lock(hub_mutex);
    hub[{game, seat}].push_back(session);
}

void HttpServer::Impl::deliver(const std::string& game, int seat, const std::string& text) {
    std::vector<std::shared_ptr<WsSession>> targets;
    {
        const std::lock_guard lock(hub_mutex);
        auto& list = hub[{game, seat}];
        std::erase_if(list, [](const auto& w) { return w.expired(); });
        for (const auto& w : list) {
            if (auto s = w.lock()) targets.push_back(std::move(s));
        }
    }
    for (auto& s : targets) s->send(text);
}

void HttpServer::Impl::accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
        if (ec == net::error::operation_aborted) return;
        if (!ec) std::make_shared<HttpSession>(std::move(socket), *this)->run();
        accept();
    });
}

HttpServer::HttpServer(GameService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

HttpServer::~HttpServer() {
    stop();
}

unsigned short HttpServer::start() {
    const tcp::endpoint endpoint{net::ip::make_address(impl_->options.address), impl_->options.port};
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.set_option(net::socket_base::reuse_address(true));
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen(net::socket_base::max_listen_connections);
    impl_->accept();
    if (impl_->options.stop_on_signals) {
        impl_->signals.add(SIGINT);
        impl_->signals.add(SIGTERM);
        impl_->signals.async_wait([this](beast::error_code, int) { stop(); });
    }
    return impl_->acceptor.local_endpoint().port();
}

void HttpServer::run() {
    std::vector<std::jthread> extra;
    for (int i = 1; i < impl_->options.threads; ++i) extra.emplace_back([this] { impl_->ioc.run(); });
    impl_->ioc.run();
}

void HttpServer::stop() {
    impl_->ioc.stop();
}

}  // namespace qpoker::server
