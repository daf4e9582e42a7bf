// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Wire format between the GCS and an operator console.
//
// server -> client
//   {"type":"frame","version":N,...}            see gcs::frame_to_json
//   {"type":"command_result","command_id":..,"accepted":..,"stale":..,"reason":..,"at":..}
// client -> server
//   {"type":"command","id":..,"version":N,"directive":{kind,target,params},"rc":false}
//   {"type":"command","id":..,"version":N,"session":"s0001","decision":"confirm"|"reject"}
//   {"type":"command","id":..,"version":N,"abort":true}

#include "hmt/gcs/gcs.hpp"
#include "hmt/msg/messages.hpp"

#include <string>
#include <string_view>

namespace hmt::console {

struct ClientCommand
{
    std::string topic;
    msg::Payload payload;
    std::string id;
};

/// Throws ProtocolError on anything but a well-formed, version-stamped command.
ClientCommand parse_client_message(std::string_view text);

std::string frame_message(const gcs::Frame& frame);
std::string command_result_message(const msg::CommandResult& result);

} // namespace hmt::console
