// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

// hmtsim: run, replay and serve missions.

#include "hmt/common/error.hpp"
#include "hmt/common/rng.hpp"
#include "hmt/console/server.hpp"
#include "hmt/gcs/mission.hpp"
#include "hmt/gcs/replay.hpp"
#include "hmt/gcs/teaming.hpp"
#include "hmt/harness/harness.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int /*sig*/) { g_stop = true; }

struct Options
{
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string clock = "lockstep";
    bool headless = false;
    std::string human_script;
    std::string log_path;
    std::string replay_path;
    std::string listen = "127.0.0.1:8080";
    std::string metrics_path;
    bool traceability = false;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw hmt::Error("cannot write " + path);
    }
    out << text;
}

void emit_metrics(const hmt::harness::RunMetrics& m, const Options& o)
{
    const auto text = hmt::harness::to_json(m).dump(2) + "\n";
    std::cout << text;
    if (!o.metrics_path.empty()) {
        write_file(o.metrics_path, text);
    }
}

int replay(const Options& o)
{
    const auto log = hmt::gcs::read_event_log(o.replay_path);
    const auto r = hmt::gcs::replay(log);
    nlohmann::json out{{"end_at", r.end_at},
                       {"records_fed", r.fed},
                       {"published", r.published.size()},
                       {"state", r.state},
                       {"metrics", hmt::harness::to_json(hmt::harness::compute_metrics(log))}};
    std::cout << out.dump(2) << "\n";
    if (!o.metrics_path.empty()) {
        write_file(o.metrics_path, hmt::harness::to_json(hmt::harness::compute_metrics(log)).dump(2) + "\n");
    }
    return 0;
}

int run_lockstep(const hmt::gcs::MissionSpec& spec, const Options& o)
{
    std::optional<hmt::harness::HumanScript> script;
    if (!o.human_script.empty()) {
        script = hmt::harness::load_human_script(o.human_script, spec);
    }
    const auto seed = o.seed.value_or(spec.seed.value_or(0));
    const auto r = hmt::harness::run_scenario(spec, script, seed);
    if (!o.log_path.empty()) {
        write_file(o.log_path, r.log);
    }
    emit_metrics(r.metrics, o);
    return r.metrics.incomplete ? 3 : 0;
}

int run_realtime(const hmt::gcs::MissionSpec& spec, const Options& o)
{
    std::ofstream log_file;
    hmt::gcs::MissionOptions options;
    options.clock = hmt::bus::ClockMode::realtime;
    options.seed = o.seed;
    if (!o.log_path.empty()) {
        log_file.open(o.log_path, std::ios::binary);
        if (!log_file) {
            throw hmt::Error("cannot write " + o.log_path);
        }
        options.log = &log_file;
    }
    hmt::gcs::Mission mission(spec, options);
    if (!o.human_script.empty()) {
        auto script = hmt::harness::load_human_script(o.human_script, spec);
        mission.add_actor(std::make_unique<hmt::harness::ScriptedHuman>(
            std::move(script), mission.spec(), hmt::derive_seed(mission.seed(), 1000)));
    }

    std::unique_ptr<hmt::console::ConsoleServer> server;
    hmt::gcs::RealtimeHooks hooks;
    if (!o.headless) {
        server = std::make_unique<hmt::console::ConsoleServer>(
            hmt::console::parse_endpoint(o.listen), hmt::gcs::mission_metadata(spec),
            [&mission](const std::string& topic, hmt::msg::Payload p) {
                mission.submit(topic, std::move(p), hmt::gcs::kConsoleActor);
            });
        server->start();
        std::cerr << "console listening on " << server->endpoint() << "\n";
        hooks.on_frame = [&server](std::shared_ptr<const hmt::gcs::Frame> f) { server->broadcast_frame(*f); };
        hooks.on_console = [&server](const hmt::bus::Envelope& env) { server->deliver(env); };
    }
    const auto final_state = mission.run_realtime(g_stop, hooks);
    if (server) {
        server->stop();
    }
    log_file.close();
    std::cerr << "mission " << hmt::gcs::to_string(final_state) << " at " << mission.now() << " ms\n";
    if (!o.log_path.empty()) {
        emit_metrics(hmt::harness::compute_metrics(hmt::gcs::read_event_log(o.log_path)), o);
    }
    return final_state == hmt::gcs::Lifecycle::incomplete ? 3 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hmtloop mission simulator"};
    Options o;
    app.add_option("--scenario", o.scenario, "Mission spec (JSON)");
    app.add_option("--seed", o.seed, "Seed; overrides the mission's");
    app.add_option("--clock", o.clock, "lockstep | realtime")->check(CLI::IsMember({"lockstep", "realtime"}));
    app.add_flag("--headless", o.headless, "Do not serve the console API");
    app.add_option("--human-script", o.human_script, "Scripted human (JSON)");
    app.add_option("--log", o.log_path, "Write the event log here");
    app.add_option("--replay", o.replay_path, "Rebuild GCS state from an event log");
    app.add_option("--listen", o.listen, "Console address host:port (realtime only)");
    app.add_option("--metrics", o.metrics_path, "Also write metrics JSON here");
    app.add_flag("--traceability", o.traceability, "Print the teaming-function traceability matrix");
    CLI11_PARSE(app, argc, argv);

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    try {
        if (o.traceability) {
            std::cout << hmt::gcs::traceability_json().dump(2) << "\n";
            const auto gaps = hmt::gcs::traceability_gaps(hmt::gcs::service_declarations());
            for (const auto& g : gaps) {
                std::cerr << "uncovered: " << g << "\n";
            }
            return gaps.empty() ? 0 : 1;
        }
        if (!o.replay_path.empty()) {
            return replay(o);
        }
        if (o.scenario.empty()) {
            std::cerr << "--scenario or --replay is required\n";
            return 2;
        }
        const auto mode = *hmt::bus::clock_mode_from(o.clock);
        auto spec = hmt::gcs::load_mission(o.scenario, mode, o.seed);
        return mode == hmt::bus::ClockMode::lockstep ? run_lockstep(spec, o) : run_realtime(spec, o);
    } catch (const hmt::ValidationError& e) {
        std::cerr << "invalid input:\n";
        for (const auto& i : e.issues()) {
            std::cerr << "  " << i << "\n";
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
