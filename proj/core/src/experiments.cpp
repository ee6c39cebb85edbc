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

#include "quditsim/experiments.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace quditsim {

namespace {

std::optional<ChannelSpec> channel_at(ChannelKind kind, double t) {
  return ChannelSpec{kind, 1.0, t};
}

Matrix matrix_power(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

KrausSet identity_kraus(int d) {
  return KrausSet{d, {Matrix::Identity(d, d)}};
}

KrausSet pair_kraus(const KrausSet& local) {
  KrausSet out{local.d * local.d, {}};
  for (const Matrix& a : local.ops)
    for (const Matrix& b : local.ops) {
      Matrix joint(4, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) joint.block(i * 2, j * 2, 2, 2) = a(i, j) * b;
      out.ops.push_back(std::move(joint));
    }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (steps < 2) throw std::invalid_argument("ExperimentConfig: steps must be >= 2");
  if (!(t_min >= 0.0)) throw std::invalid_argument("ExperimentConfig: t-min must be >= 0");
  if (!(t_max > t_min)) throw std::invalid_argument("ExperimentConfig: t-max must exceed t-min");
  if (d < 2) throw std::invalid_argument("ExperimentConfig: d must be >= 2");
  if (n < 1) throw std::invalid_argument("ExperimentConfig: n must be >= 1");
  const bool averaged = experiment == "transfer-sweep" || experiment == "encoding-sweep";
  if (averaged && samples < 100)
    throw std::invalid_argument("ExperimentConfig: averaged experiments need samples >= 100");
}

std::vector<double> time_grid(const ExperimentConfig& config) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(config.steps));
  const double span = config.t_max - config.t_min;
  for (int i = 0; i < config.steps; ++i)
    grid.push_back(config.t_min + span * static_cast<double>(i) / (config.steps - 1));
  return grid;
}

std::string format_sig(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("CsvTable: cannot open " + path);
  file << to_string();
}

// ---------------------------------------------------------------------------
// Heisenberg-picture transfer fidelity
// ---------------------------------------------------------------------------

double transfer_fidelity(int n, int d, const PureState& input,
                         const std::optional<ChannelSpec>& noise) {
  if (n < 1) throw std::invalid_argument("transfer_fidelity: n must be >= 1");
  const PureState cluster = build_cluster(ClusterGraph::linear(n), d, {{1, input}});
  const QuditSystem& sys = cluster.system;
  const KrausSet kraus = noise ? kraus_set(*noise, d) : identity_kraus(d);

  const Vector plus = plus_state(d).amp;
  const Matrix measured_obs = adjoint_apply(kraus, plus * plus.adjoint());
  const Vector ref = matrix_power(fourier(d).mat, n - 1) * input.amp;
  const Matrix ref_obs = adjoint_apply(kraus, ref * ref.adjoint());

  Vector den = cluster.amp;
  for (int site = 1; site < n; ++site) den = apply_local(den, sys, site, measured_obs);
  const Vector num = apply_local(den, sys, n, ref_obs);

  const double p = std::real(cluster.amp.dot(den));
  if (p < kZeroProbability) return 0.0;
  return std::sqrt(std::max(std::real(cluster.amp.dot(num)), 0.0) / p);
}

double pair_transfer_fidelity(int n, const PureState& pair_input,
                              const std::optional<ChannelSpec>& noise) {
  if (n < 1) throw std::invalid_argument("pair_transfer_fidelity: n must be >= 1");
  if (pair_input.system.d != 2 || pair_input.system.n != 2)
    throw std::invalid_argument("pair_transfer_fidelity: input must be two qubits");

  const QuditSystem sys(2, 2 * n);
  Vector amp(sys.dim());
  const double rest = std::pow(1.0 / std::sqrt(2.0), 2 * (n - 1));
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    const int ka = sys.digit(i, 1);
    const int kb = sys.digit(i, n + 1);
    amp(static_cast<Eigen::Index>(i)) = pair_input.amp(ka * 2 + kb) * rest;
  }
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    long long exponent = 0;
    for (int s = 1; s < n; ++s) {
      exponent += static_cast<long long>(sys.digit(i, s)) * sys.digit(i, s + 1);
      exponent += static_cast<long long>(sys.digit(i, n + s)) * sys.digit(i, n + s + 1);
    }
    if (exponent % 2 != 0) amp(static_cast<Eigen::Index>(i)) = -amp(static_cast<Eigen::Index>(i));
  }

  const KrausSet kraus = noise ? kraus_set(*noise, 2) : identity_kraus(2);
  const Vector plus = plus_state(2).amp;
  const Matrix measured_obs = adjoint_apply(kraus, plus * plus.adjoint());

  const Operator f = fourier(2);
  const Matrix prop = matrix_power(tensor(f, f).mat, n - 1);
  const Vector ref = prop * pair_input.amp;
  const Matrix ref_obs = adjoint_apply(pair_kraus(kraus), ref * ref.adjoint());

  Vector den = amp;
  for (int s = 1; s < n; ++s) {
    den = apply_local(den, sys, s, measured_obs);
    den = apply_local(den, sys, n + s, measured_obs);
  }
  const Vector num = apply_two_site(den, sys, n, 2 * n, ref_obs);

  const double p = std::real(amp.dot(den));
  if (p < kZeroProbability) return 0.0;
  return std::sqrt(std::max(std::real(amp.dot(num)), 0.0) / p);
}

MeanSe mean_transfer_fidelity(int n, int d, bool pair, const EncodingSpec* encoding,
                              ChannelKind kind, double t, std::size_t samples,
                              std::uint64_t seed) {
  const std::optional<ChannelSpec> noise = channel_at(kind, t);
  std::vector<double> values;
  values.reserve(samples);
  if (encoding) {
    StateSampler sampler(2, seed);  // logical qubit
    for (std::size_t i = 0; i < samples; ++i) {
      const PureState q = sampler.sample();
      const PureState psi = encode(*encoding, q.amp(0), q.amp(1));
      values.push_back(encoding->pair ? pair_transfer_fidelity(n, psi, noise)
                                      : transfer_fidelity(n, encoding->d, psi, noise));
    }
  } else if (pair) {
    StateSampler sampler(4, seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const PureState c = sampler.sample();
      const PureState psi{QuditSystem(2, 2), c.amp};
      values.push_back(pair_transfer_fidelity(n, psi, noise));
    }
  } else {
    StateSampler sampler(d, seed);
    for (std::size_t i = 0; i < samples; ++i)
      values.push_back(transfer_fidelity(n, d, sampler.sample(), noise));
  }
  return mean_se(values);
}

// ---------------------------------------------------------------------------
// Experiment runners
// ---------------------------------------------------------------------------

CsvTable run_cluster_fidelity(const ExperimentConfig& config) {
  config.validate();
  if (config.n < 2 || config.n > 5)
    throw std::invalid_argument("cluster-fidelity: n must lie in 2..5");
  if (config.d < 2 || config.d > 4)
    throw std::invalid_argument("cluster-fidelity: d must lie in 2..4");

  const PureState cluster = build_cluster(ClusterGraph::linear(config.n), config.d);
  const PureState ghz = config.ghz ? ghz_state(config.n, config.d)
                                   : PureState{cluster.system, cluster.amp};

  CsvTable table;
  table.header = {"t", "fidelity"};
  if (config.ghz) table.header.push_back("ghz_fidelity");
  table.header.push_back("status");

  for (double t : time_grid(config)) {
    const ChannelSpec spec{config.channel, 1.0, t};
    std::vector<std::string> row{format_sig(t)};
    row.push_back(format_sig(fidelity(cluster, apply_all(to_density(cluster), spec))));
    if (config.ghz)
      row.push_back(format_sig(fidelity(ghz, apply_all(to_density(ghz), spec))));
    row.push_back("ok");
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable run_entanglement_decay(const ExperimentConfig& config) {
  config.validate();
  if (config.n != 2) throw std::invalid_argument("entanglement-decay: n must be 2");
  if (config.d < 2 || config.d > 4)
    throw std::invalid_argument("entanglement-decay: d must lie in 2..4");

  const PureState cluster = build_cluster(ClusterGraph::linear(2), config.d);
  const Bipartition split{{1}};

  CsvTable table;
  table.header = {"t", "concurrence", "normalized", "mu_ratio", "status"};
  for (double t : time_grid(config)) {
    const ChannelSpec spec{config.channel, 1.0, t};
    const DensityMatrix rho = apply_all(to_density(cluster), spec);
    double c = 0.0, mu = 0.0;
    if (config.d == 2) {
      c = wootters_concurrence(rho);
      const EigSystem eig = eig_system(rho);
      mu = eig.values(0) > 0.0 ? eig.values(1) / eig.values(0) : 0.0;
    } else {
      const QuasiPure qp = quasi_pure_concurrence(rho, split);
      c = qp.c_qp;
      mu = qp.mu_ratio;
    }
    table.rows.push_back({format_sig(t), format_sig(c),
                          format_sig(c / max_concurrence(config.d)), format_sig(mu), "ok"});
  }
  return table;
}

CsvTable run_transfer_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.n > 5) throw std::invalid_argument("transfer-sweep: n must lie in 1..5");
  if (!config.pair && (config.d < 2 || config.d > 4))
    throw std::invalid_argument("transfer-sweep: d must lie in 2..4 (or use --pair)");

  CsvTable table;
  table.header = {"t", "mean_fidelity", "se", "status"};
  for (double t : time_grid(config)) {
    const MeanSe stat = mean_transfer_fidelity(config.n, config.d, config.pair, nullptr,
                                               config.channel, t, config.samples, config.seed);
    table.rows.push_back({format_sig(t), format_sig(stat.mean), format_sig(stat.se), "ok"});
  }
  return table;
}

CsvTable run_encoding_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.n > 3) throw std::invalid_argument("encoding-sweep: n must lie in 1..3");
  if (config.encoding.size() != 1)
    throw std::invalid_argument("encoding-sweep: --encoding must be one of G|T|L|O|M|E");
  const EncodingSpec spec = EncodingSpec::named(config.encoding[0], config.d, config.pair);

  CsvTable table;
  table.header = {"t", "mean_fidelity", "se", "status"};
  for (double t : time_grid(config)) {
    const MeanSe stat = mean_transfer_fidelity(config.n, spec.d, spec.pair, &spec,
                                               config.channel, t, config.samples, config.seed);
    table.rows.push_back({format_sig(t), format_sig(stat.mean), format_sig(stat.se), "ok"});
  }
  return table;
}

CsvTable run_gate_entanglement(const ExperimentConfig& config) {
  config.validate();
  if (config.d != 2 && config.d != 4)
    throw std::invalid_argument("gate-entanglement: d must be 2 or 4");
  const bool encoded = !config.encoding.empty();
  if (encoded && (config.encoding != "G" || config.d != 4))
    throw std::invalid_argument("gate-entanglement: encoded mode is G at d = 4");

  const int d = config.d;
  const std::vector<double> alphas = entangling_angles(d);
  const Bipartition split{{1}};

  // encoded mode confines every qudit of the pattern to the two lowest levels
  PureState input = plus_state(d);
  if (encoded) {
    Vector v = Vector::Zero(4);
    v(0) = v(1) = 1.0 / std::sqrt(2.0);
    input = PureState{QuditSystem(4, 1), std::move(v)};
  }

  CsvTable table;
  table.header = {"t", "concurrence", "normalized", "status"};
  for (double t : time_grid(config)) {
    std::optional<ChannelSpec> noise;
    if (t > 0.0) noise = ChannelSpec{config.channel, 1.0, t};
    PureState middle = encoded ? input : plus_state(d);
    const PureState cluster =
        build_cluster(ClusterGraph::linear(3), d, {{1, input}, {2, middle}, {3, input}});
    DensityMatrix rho = to_density(cluster);
    if (noise) rho = apply_all(rho, *noise);
    const MeasureResult m =
        measure_site(rho, 2, MeasurementBasis{d, alphas}, 0);

    std::string status = m.zero_probability ? "zero-prob" : "ok";
    double c = 0.0, cn = 0.0;
    if (!m.zero_probability) {
      if (encoded) {
        // support stays on levels {0,1} x {0,1}; read it as a two-qubit state
        Matrix block(4, 4);
        const std::array<Eigen::Index, 4> idx{0, 1, 4, 5};
        for (int r = 0; r < 4; ++r)
          for (int col = 0; col < 4; ++col)
            block(r, col) = m.state.rho(idx[static_cast<std::size_t>(r)],
                                        idx[static_cast<std::size_t>(col)]);
        block /= std::real(block.trace());
        c = wootters_concurrence(DensityMatrix{QuditSystem(2, 2), block});
        cn = c;
      } else if (d == 2) {
        c = wootters_concurrence(m.state);
        cn = c;
      } else {
        c = quasi_pure_concurrence(m.state, split).c_qp;
        cn = c / max_concurrence(d);
      }
    }
    table.rows.push_back({format_sig(t), format_sig(c), format_sig(cn), status});
  }
  return table;
}

CsvTable run_experiment(const ExperimentConfig& config) {
  if (config.experiment == "cluster-fidelity") return run_cluster_fidelity(config);
  if (config.experiment == "entanglement-decay") return run_entanglement_decay(config);
  if (config.experiment == "transfer-sweep") return run_transfer_sweep(config);
  if (config.experiment == "encoding-sweep") return run_encoding_sweep(config);
  if (config.experiment == "gate-entanglement") return run_gate_entanglement(config);
  throw std::invalid_argument("run_experiment: unknown experiment '" + config.experiment + "'");
}

}  // namespace quditsim
