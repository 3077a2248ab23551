// Copyright 2026 The rhactl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rha/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "rha/cluster_model.hpp"
#include "rha/error.hpp"
#include "rha/monitor.hpp"
#include "rha/replay.hpp"
#include "rha/sim.hpp"
#include "rha/stage_config.hpp"
#include "rha/stats.hpp"

namespace rha {
namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Relative output paths land under $RHACTL_OUTPUT_DIR when it is set.
fs::path output_path(const std::string& flag) {
  fs::path p(flag);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("RHACTL_OUTPUT_DIR"); dir && *dir) {
      p = fs::path(dir) / p;
    }
  }
  return p;
}

void emit(const std::string& flag, const std::string& data, std::ostream& out) {
  if (flag.empty() || flag == "-") {
    out << data;
    return;
  }
  const auto path = output_path(flag);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(fmt::format("cannot write {}", path.string()));
  f << data;
  if (!f.flush()) throw Error(fmt::format("cannot write {}", path.string()));
}

ClusterConfig load_cluster(const std::string& path) {
  return path.empty() ? sim::default_cluster() : parse_hosts_def(read_file(path));
}

std::string where(const std::string& path, const ParseError& e) {
  std::string msg;
  for (const auto& d : e.diagnostics()) {
    msg += fmt::format("{}:{}: {}\n", path, d.line, d.message);
  }
  return msg;
}

struct SimulateArgs {
  std::string config;
  std::string scenario;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string target;
  std::string stage_config;
  unsigned jobs = 0;
  bool jitter = false;
};

struct ReplayArgs {
  std::string script;
  std::string log;
  std::string state_dir;
  std::string profile_dir;
};

struct ReportArgs {
  std::string in;
  double bin_width = 5;
  std::string out;
  std::string scenario;
};

struct FeedArgs {
  std::string file;
  std::string config;
  std::string in;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Relaxed high-availability controller toolkit", "rhactl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rhactl 1.0.0");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "Check a hosts.def file");
  validate->add_option("path", validate_path, "hosts.def to check")->required();

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a crash campaign, CSV out");
  simulate->add_option("--config", sim_args.config, "hosts.def (default: built-in cluster)");
  simulate->add_option("--scenario", sim_args.scenario, "Crash scenario")
      ->required()
      ->check(CLI::IsMember(sim::scenario_names()));
  simulate->add_option("--trials", sim_args.trials, "Number of trials")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  simulate->add_option("--seed", sim_args.seed, "Campaign seed")->required();
  simulate->add_option("--out", sim_args.out, "CSV file (default: stdout)");
  simulate->add_option("--target", sim_args.target, "Host to crash");
  simulate->add_option("--stage-config", sim_args.stage_config,
                       "Stage settings replacing the scenario's");
  simulate->add_option("--jobs", sim_args.jobs, "Worker threads (0: all cores)");
  simulate->add_flag("--detection-jitter", sim_args.jitter,
                     "Draw detection latency from U[62.5, 77.5] s");

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "Replay an incident script");
  replay->add_option("--script", replay_args.script, "Script file")->required();
  replay->add_option("--log", replay_args.log, "Log file (default: stdout)");
  replay->add_option("--state-dir", replay_args.state_dir,
                     "Directory for per-VM state files");
  replay->add_option("--profile-dir", replay_args.profile_dir,
                     "Directory for PXE profile links");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Summarize a campaign CSV as JSON");
  report->add_option("--in", report_args.in, "Campaign CSV")->required();
  report->add_option("--bin-width", report_args.bin_width, "Histogram bin width (s)")
      ->check(CLI::PositiveNumber);
  report->add_option("--out", report_args.out, "JSON file (default: stdout)");
  report->add_option("--scenario", report_args.scenario, "Scenario label");

  FeedArgs feed_args;
  auto* feed = app.add_subcommand("feed", "Status feed tools");
  feed->require_subcommand(1);
  auto* feed_parse = feed->add_subcommand("parse", "Check a feed and list it");
  feed_parse->add_option("file", feed_args.file, "Feed file")->required();
  auto* feed_render = feed->add_subcommand("render", "Print the feed for a cluster");
  feed_render->add_option("--config", feed_args.config, "hosts.def")->required();
  feed_render->add_option("--in", feed_args.in,
                          "Feed to match against the cluster (default: all alive)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "rhactl: " << e.what() << '\n';
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) {
      const auto diags = validate_hosts_def(read_file(validate_path));
      for (const auto& d : diags) err << fmt::format("{}:{}: {}\n", validate_path, d.line, d.message);
      if (!diags.empty()) return kExitDomain;
      const auto config = parse_hosts_def(read_file(validate_path));
      out << fmt::format("{}: ok ({} PH, {} VM)\n", validate_path,
                         config.physical_hosts().size(), config.virtual_machines().size());
      return kExitOk;
    }

    if (simulate->parsed()) {
      const auto config = load_cluster(sim_args.config);
      auto scenario = sim::named_scenario(sim_args.scenario, config, sim_args.target);
      if (!sim_args.stage_config.empty()) {
        scenario.stages = StageConfig::parse(read_file(sim_args.stage_config));
      }
      TimingModel timing;
      if (sim_args.jitter) timing.with_detection_jitter();
      const auto samples = sim::run_campaign(config, scenario, timing, sim_args.trials,
                                             sim_args.seed, sim_args.jobs);
      emit(sim_args.out, sim::campaign_csv(samples), out);
      return kExitOk;
    }

    if (replay->parsed()) {
      const auto script = parse_replay_script(read_file(replay_args.script));
      ReplayOptions options;
      if (!replay_args.state_dir.empty()) options.state_dir = replay_args.state_dir;
      if (!replay_args.profile_dir.empty()) options.profile_dir = replay_args.profile_dir;
      const auto result = replay_trace(script, options);
      emit(replay_args.log, result.log, out);
      const Seconds off = script.options.utc_offset;
      for (const auto& c : result.crashes) {
        if (c.recovered_at) {
          err << fmt::format("{}: crashed {}, recovered {}, outage {} s\n", c.host,
                             format_timestamp(c.crashed_at, off),
                             format_timestamp(*c.recovered_at, off), *c.outage());
        } else {
          err << fmt::format("{}: crashed {}, not recovered\n", c.host,
                             format_timestamp(c.crashed_at, off));
        }
      }
      return kExitOk;
    }

    if (report->parsed()) {
      const auto json = report_json(read_file(report_args.in),
                                    {report_args.scenario, report_args.bin_width});
      emit(report_args.out, json, out);
      return kExitOk;
    }

    if (feed_parse->parsed()) {
      const auto snap = parse_status_feed(read_file(feed_args.file));
      for (const auto& s : snap.samples) {
        out << fmt::format("{} {} {} {}\n", s.host, s.load.fixed2(), s.last_ping,
                           is_dead(s) ? "dead" : "alive");
      }
      return kExitOk;
    }

    if (feed_render->parsed()) {
      const auto config = load_cluster(feed_args.config);
      MonitorSnapshot snap;
      if (feed_args.in.empty()) {
        for (const auto& h : config.hosts()) {
          snap.samples.push_back(
              {h.name, Load::from_hundredths(h.is_ph() ? 100 : 50), 0});
        }
      } else {
        const StatusView view(parse_status_feed(read_file(feed_args.in)), config);
        for (const auto& name : view.order()) {
          auto s = view.sample(name);
          s.host = name;
          snap.samples.push_back(std::move(s));
        }
      }
      out << render_status_feed(snap);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::string path = simulate->parsed()  ? sim_args.config
                       : replay->parsed()  ? replay_args.script
                       : report->parsed()  ? report_args.in
                       : feed_parse->parsed() ? feed_args.file
                       : feed_render->parsed() ? (feed_args.in.empty() ? feed_args.config : feed_args.in)
                                               : validate_path;
    if (simulate->parsed() && path.empty()) path = sim_args.stage_config;
    err << where(path, e);
    return kExitDomain;
  } catch (const Error& e) {
    err << "rhactl: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "rhactl: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace rha
