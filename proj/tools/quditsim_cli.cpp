// Copyright 2026 The quditsim Authors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "quditsim/experiments.hpp"

namespace {

struct CliOptions {
  quditsim::ExperimentConfig config;
  std::string channel = "ad";
  std::string out;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt, bool averaged) {
  cmd->add_option("--d", opt.config.d, "Local dimension")->capture_default_str();
  cmd->add_flag("--pair", opt.config.pair, "Use an entangled pair of qubits (2x2 mode)");
  cmd->add_option("--n", opt.config.n, "Cluster length")->capture_default_str();
  cmd->add_option("--channel", opt.channel, "Decoherence channel: ad | pd")
      ->check(CLI::IsMember({"ad", "pd"}))
      ->capture_default_str();
  cmd->add_option("--t-min", opt.config.t_min, "First rescaled exposure time")
      ->capture_default_str();
  cmd->add_option("--t-max", opt.config.t_max, "Last rescaled exposure time")
      ->capture_default_str();
  cmd->add_option("--steps", opt.config.steps, "Number of grid points")->capture_default_str();
  if (averaged)
    cmd->add_option("--samples", opt.config.samples, "Monte-Carlo input samples")
        ->capture_default_str();
  cmd->add_option("--seed", opt.config.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", opt.out, "Output CSV path (stdout when omitted)");
}

int run(const CliOptions& opt) {
  quditsim::ExperimentConfig config = opt.config;
  config.channel = opt.channel == "pd" ? quditsim::ChannelKind::PhaseDamping
                                       : quditsim::ChannelKind::AmplitudeDamping;
  const quditsim::CsvTable table = quditsim::run_experiment(config);
  if (opt.out.empty())
    std::cout << table.to_string();
  else
    table.write_file(opt.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qudit cluster-state decoherence experiments"};
  app.require_subcommand(1);

  CliOptions opt;

  auto* cluster = app.add_subcommand(
      "cluster-fidelity", "Fidelity decay of a bare linear cluster (optional GHZ comparison)");
  add_common_flags(cluster, opt, false);
  cluster->add_flag("--ghz", opt.config.ghz, "Add a GHZ comparison column");
  cluster->callback([&] { opt.config.experiment = "cluster-fidelity"; });

  auto* decay = app.add_subcommand("entanglement-decay",
                                   "Concurrence decay of the two-qudit cluster");
  add_common_flags(decay, opt, false);
  decay->callback([&] { opt.config.experiment = "entanglement-decay"; });

  auto* sweep = app.add_subcommand("transfer-sweep",
                                   "Mean transfer fidelity along a linear cluster");
  add_common_flags(sweep, opt, true);
  sweep->callback([&] { opt.config.experiment = "transfer-sweep"; });

  auto* enc = app.add_subcommand("encoding-sweep",
                                 "Mean fidelity of an encoded logical qubit");
  add_common_flags(enc, opt, true);
  enc->add_option("--encoding", opt.config.encoding, "Encoding: G | T | L | O | M | E")
      ->check(CLI::IsMember({"G", "T", "L", "O", "M", "E"}))
      ->required();
  enc->callback([&] { opt.config.experiment = "encoding-sweep"; });

  auto* gate = app.add_subcommand("gate-entanglement",
                                  "Entanglement generated by the three-site pattern");
  add_common_flags(gate, opt, false);
  gate->add_option("--encoding", opt.config.encoding,
                   "G: run a pair of ground-encoded qubits (d = 4)");
  gate->callback([&] { opt.config.experiment = "gate-entanglement"; });

  CLI11_PARSE(app, argc, argv);

  try {
    return run(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
