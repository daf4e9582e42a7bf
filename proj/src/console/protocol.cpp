// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/console/protocol.hpp"

#include "hmt/bus/topic.hpp"
#include "hmt/common/error.hpp"
#include "hmt/msg/json.hpp"

namespace hmt::console {

using nlohmann::json;

ClientCommand parse_client_message(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("type", "") != "command") {
        throw ProtocolError("expected a message of type 'command'");
    }
    if (!j.contains("id") || !j.at("id").is_string() || j.at("id").get<std::string>().empty()) {
        throw ProtocolError("command without id");
    }
    if (!j.contains("version") || !j.at("version").is_number_unsigned()) {
        throw ProtocolError("command without a frame version stamp");
    }
    ClientCommand c;
    c.id = j.at("id").get<std::string>();
    try {
        if (j.contains("session") || j.contains("decision")) {
            c.topic = std::string(bus::topics::kHumanResponse);
            c.payload = j.get<msg::ResponseCommand>();
        } else {
            c.topic = std::string(bus::topics::kHumanDirective);
            c.payload = j.get<msg::DirectiveCommand>();
        }
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("bad command: ") + e.what());
    }
    return c;
}

std::string frame_message(const gcs::Frame& frame) { return gcs::frame_to_json(frame).dump(); }

std::string command_result_message(const msg::CommandResult& result)
{
    json j = result;
    j["type"] = "command_result";
    return j.dump();
}

} // namespace hmt::console
