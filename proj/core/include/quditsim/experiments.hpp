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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quditsim/mbqc.hpp"
#include "quditsim/metrics.hpp"

namespace quditsim {

/// One experiment run. Rates are fixed to 1; the time axis is the rescaled
/// exposure Gamma*t of the figures.
struct ExperimentConfig {
  std::string experiment;
  int d = 2;
  bool pair = false;
  int n = 2;
  ChannelKind channel = ChannelKind::AmplitudeDamping;
  double t_min = 0.0;
  double t_max = 2.0;
  int steps = 9;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  std::string encoding;  // encoding-sweep / gate-entanglement: G|T|L|O|M|E
  bool ghz = false;      // cluster-fidelity: add a GHZ comparison column

  void validate() const;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
  void write_file(const std::string& path) const;
};

/// Fidelity of the bare n-site linear cluster under the channel, with an
/// optional GHZ comparison column.
CsvTable run_cluster_fidelity(const ExperimentConfig& config);

/// Concurrence decay of the two-qudit cluster: Wootters for d = 2, the
/// quasi-pure bound plus its normalized fraction and the mu_2/mu_1
/// diagnostic for d > 2.
CsvTable run_entanglement_decay(const ExperimentConfig& config);

/// Mean transfer fidelity over input states for one (d | pair, n) cell.
CsvTable run_transfer_sweep(const ExperimentConfig& config);

/// Mean fidelity of one encoded logical qubit stored (n = 1) or propagated
/// (n >= 2).
CsvTable run_encoding_sweep(const ExperimentConfig& config);

/// Entanglement generated by the three-site pattern under decoherence:
/// bare inputs, or a pair of ground-encoded qubits for d = 4.
CsvTable run_gate_entanglement(const ExperimentConfig& config);

/// Dispatch by config.experiment.
CsvTable run_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Sampling helpers shared by the sweeps and the acceptance suite
// ---------------------------------------------------------------------------

/// Transfer fidelity against the ideal output, computed in the Heisenberg
/// picture: the adjoint channel is applied to the per-site measurement and
/// reference projectors and contracted with the noiseless cluster. Equals
/// fidelity(ideal, transfer(...).state) without ever forming the density
/// matrix.
double transfer_fidelity(int n, int d, const PureState& input,
                         const std::optional<ChannelSpec>& noise);

/// Same for the two-chain qubit-pair transfer.
double pair_transfer_fidelity(int n, const PureState& pair_input,
                              const std::optional<ChannelSpec>& noise);

/// Mean/SE of the transfer fidelity over sampled inputs. Bare runs sample the
/// physical space; encoded runs sample the logical qubit and encode it.
MeanSe mean_transfer_fidelity(int n, int d, bool pair, const EncodingSpec* encoding,
                              ChannelKind kind, double t, std::size_t samples,
                              std::uint64_t seed);

std::vector<double> time_grid(const ExperimentConfig& config);

/// Shortest-float formatting at 12 significant digits, used for every CSV
/// numeric field.
std::string format_sig(double value);

}  // namespace quditsim
