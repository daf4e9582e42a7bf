// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/bus/bus.hpp"
#include "hmt/gcs/gcs.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <string>

namespace hmt::console {

struct Endpoint
{
    std::string host = "127.0.0.1";
    unsigned short port = 8080;
};

/// "host:port"; port 0 picks a free one.
Endpoint parse_endpoint(const std::string& text);

/// Receives parsed console commands; must be thread-safe.
using CommandSink = std::function<void(const std::string& topic, msg::Payload payload)>;

/// Console API: a websocket at /console carrying frames and command
/// results out and commands in, plus GET /mission for mission metadata.
/// Runs its own I/O thread. Frames are latest-wins per client: a slow
/// client skips intermediate frames rather than queueing them.
class ConsoleServer
{
public:
    ConsoleServer(Endpoint endpoint, nlohmann::json metadata, CommandSink sink);
    ~ConsoleServer();

    ConsoleServer(const ConsoleServer&) = delete;
    ConsoleServer& operator=(const ConsoleServer&) = delete;

    void start();
    void stop();

    [[nodiscard]] std::string endpoint() const;
    [[nodiscard]] unsigned short port() const;

    void broadcast_frame(const gcs::Frame& frame);
    /// Forwards command results to the client that issued the command, or to
    /// all clients when the issuer is unknown.
    void deliver(const bus::Envelope& env);

    struct Impl;  // I/O state shared with in-flight handlers

private:
    std::shared_ptr<Impl> impl_;
};

} // namespace hmt::console
