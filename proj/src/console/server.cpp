// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/console/server.hpp"

#include "hmt/common/error.hpp"
#include "hmt/console/protocol.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <thread>

namespace hmt::console {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

Endpoint parse_endpoint(const std::string& text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) {
        throw ValidationError({"listen: expected host:port, got '" + text + "'"});
    }
    Endpoint e;
    e.host = text.substr(0, colon);
    try {
        const auto port = std::stoul(text.substr(colon + 1));
        if (port > 65535) {
            throw std::out_of_range("port");
        }
        e.port = static_cast<unsigned short>(port);
    } catch (const std::exception&) {
        throw ValidationError({"listen: bad port in '" + text + "'"});
    }
    if (e.host.empty()) {
        e.host = "0.0.0.0";
    }
    return e;
}

namespace {

class WsSession;

} // namespace

struct ConsoleServer::Impl : std::enable_shared_from_this<ConsoleServer::Impl>
{
    Impl(Endpoint ep, nlohmann::json meta, CommandSink s)
        : requested(std::move(ep)), metadata(std::move(meta)), sink(std::move(s)), acceptor(ioc)
    {
    }

    void accept();
    void on_message(const std::shared_ptr<WsSession>& from, const std::string& text);
    void detach(const std::shared_ptr<WsSession>& s) { sessions.erase(s); }

    Endpoint requested;
    nlohmann::json metadata;
    CommandSink sink;
    net::io_context ioc;
    tcp::acceptor acceptor;
    std::thread thread;
    unsigned short bound_port = 0;

    // I/O thread only.
    std::set<std::shared_ptr<WsSession>> sessions;
    std::optional<std::string> latest_frame;
    std::map<std::string, std::weak_ptr<WsSession>> issuers;
};

namespace {

class WsSession : public std::enable_shared_from_this<WsSession>
{
public:
    WsSession(tcp::socket socket, std::weak_ptr<ConsoleServer::Impl> server)
        : ws_(std::move(socket)), server_(std::move(server))
    {
    }

    void run(http::request<http::string_body> req)
    {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
            if (ec) {
                return;
            }
            auto server = self->server_.lock();
            if (!server) {
                return;
            }
            server->sessions.insert(self);
            if (server->latest_frame) {
                self->send_frame(*server->latest_frame);
            }
            self->read();
        });
    }

    void send_frame(std::string text)
    {
        pending_frame_ = std::move(text);
        if (!writing_) {
            write_next();
        }
    }

    void send_result(std::string text)
    {
        results_.push_back(std::move(text));
        if (!writing_) {
            write_next();
        }
    }

    void close()
    {
        beast::error_code ec;
        beast::get_lowest_layer(ws_).socket().close(ec);
    }

private:
    void read()
    {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            auto server = self->server_.lock();
            if (ec || !server) {
                if (server) {
                    server->detach(self);
                }
                return;
            }
            const auto text = beast::buffers_to_string(self->buffer_.data());
            self->buffer_.consume(self->buffer_.size());
            server->on_message(self, text);
            self->read();
        });
    }

    void write_next()
    {
        if (!results_.empty()) {
            out_ = std::move(results_.front());
            results_.pop_front();
        } else if (pending_frame_) {
            out_ = std::move(*pending_frame_);
            pending_frame_.reset();
        } else {
            writing_ = false;
            return;
        }
        writing_ = true;
        ws_.text(true);
        ws_.async_write(net::buffer(out_), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->writing_ = false;
                if (auto server = self->server_.lock()) {
                    server->detach(self);
                }
                return;
            }
            self->write_next();
        });
    }

    websocket::stream<beast::tcp_stream> ws_;
    std::weak_ptr<ConsoleServer::Impl> server_;
    beast::flat_buffer buffer_;
    std::deque<std::string> results_;
    std::optional<std::string> pending_frame_;
    std::string out_;
    bool writing_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession>
{
public:
    HttpSession(tcp::socket socket, std::weak_ptr<ConsoleServer::Impl> server)
        : stream_(std::move(socket)), server_(std::move(server))
    {
    }

    void run()
    {
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (!ec) {
                self->handle();
            }
        });
    }

private:
    void handle()
    {
        if (websocket::is_upgrade(req_)) {
            if (req_.target() == "/console") {
                stream_.expires_never();
                std::make_shared<WsSession>(stream_.release_socket(), server_)->run(std::move(req_));
                return;
            }
            respond(http::status::not_found, "text/plain", "no websocket at this path\n");
            return;
        }
        if (req_.method() != http::verb::get) {
            respond(http::status::method_not_allowed, "text/plain", "GET only\n");
            return;
        }
        if (req_.target() == "/mission") {
            auto server = server_.lock();
            respond(http::status::ok, "application/json", server ? server->metadata.dump() : "{}");
            return;
        }
        respond(http::status::not_found, "text/plain", "not found\n");
    }

    void respond(http::status status, std::string_view type, std::string body)
    {
        auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
        res->set(http::field::server, "hmtloop");
        res->set(http::field::content_type, beast::string_view(type.data(), type.size()));
        res->keep_alive(false);
        res->body() = std::move(body);
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
            beast::error_code ec;
            self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
        });
    }

    beast::tcp_stream stream_;
    std::weak_ptr<ConsoleServer::Impl> server_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
};

} // namespace

void ConsoleServer::Impl::accept()
{
    acceptor.async_accept(net::make_strand(ioc), [self = shared_from_this()](beast::error_code ec, tcp::socket s) {
        if (ec) {
            return;
        }
        std::make_shared<HttpSession>(std::move(s), self)->run();
        self->accept();
    });
}

void ConsoleServer::Impl::on_message(const std::shared_ptr<WsSession>& from, const std::string& text)
{
    ClientCommand c;
    try {
        c = parse_client_message(text);
    } catch (const ProtocolError& e) {
        msg::CommandResult r;
        try {
            const auto j = nlohmann::json::parse(text);
            if (j.is_object() && j.contains("id") && j.at("id").is_string()) {
                r.command_id = j.at("id").get<std::string>();
            }
        } catch (const std::exception&) {
        }
        r.accepted = false;
        r.reason = e.what();
        from->send_result(command_result_message(r));
        return;
    }
    issuers[c.id] = from;
    sink(c.topic, std::move(c.payload));
}

ConsoleServer::ConsoleServer(Endpoint endpoint, nlohmann::json metadata, CommandSink sink)
    : impl_(std::make_shared<Impl>(std::move(endpoint), std::move(metadata), std::move(sink)))
{
}

ConsoleServer::~ConsoleServer() { stop(); }

void ConsoleServer::start()
{
    auto& i = *impl_;
    const tcp::endpoint ep{net::ip::make_address(i.requested.host), i.requested.port};
    i.acceptor.open(ep.protocol());
    i.acceptor.set_option(net::socket_base::reuse_address(true));
    i.acceptor.bind(ep);
    i.acceptor.listen(net::socket_base::max_listen_connections);
    i.bound_port = i.acceptor.local_endpoint().port();
    i.accept();
    i.thread = std::thread([impl = impl_] { impl->ioc.run(); });
}

void ConsoleServer::stop()
{
    if (!impl_ || !impl_->thread.joinable()) {
        return;
    }
    net::post(impl_->ioc, [impl = impl_] {
        beast::error_code ec;
        impl->acceptor.close(ec);
        for (const auto& s : impl->sessions) {
            s->close();
        }
        impl->sessions.clear();
        impl->ioc.stop();
    });
    impl_->thread.join();
}

std::string ConsoleServer::endpoint() const
{
    return impl_->requested.host + ":" + std::to_string(impl_->bound_port);
}

unsigned short ConsoleServer::port() const { return impl_->bound_port; }

void ConsoleServer::broadcast_frame(const gcs::Frame& frame)
{
    net::post(impl_->ioc, [impl = impl_, text = frame_message(frame)]() mutable {
        impl->latest_frame = text;
        for (const auto& s : impl->sessions) {
            s->send_frame(text);
        }
    });
}

void ConsoleServer::deliver(const bus::Envelope& env)
{
    const auto* r = std::get_if<msg::CommandResult>(&env.payload);
    if (r == nullptr) {
        return;
    }
    net::post(impl_->ioc, [impl = impl_, id = r->command_id, text = command_result_message(*r)] {
        const auto it = impl->issuers.find(id);
        if (it != impl->issuers.end()) {
            auto s = it->second.lock();
            impl->issuers.erase(it);
            if (s && impl->sessions.count(s) != 0) {
                s->send_result(text);
                return;
            }
        }
        for (const auto& s : impl->sessions) {
            s->send_result(text);
        }
    });
}

} // namespace hmt::console
