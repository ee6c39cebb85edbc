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
//
// End-to-end acceptance suite. Each numbered block prints one PASS/FAIL line;
// the process exits non-zero if any block fails. Expected-to-fail physics is
// not masked: blocks 5 and 6 assert orderings that the simulation shows to be
// unreachable (see the printed details), and they are reported honestly.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "quditsim/experiments.hpp"

using namespace quditsim;

namespace {

struct Block {
  bool ok = true;
  std::vector<std::string> details;

  void expect(bool condition, const std::string& detail) {
    if (!condition) {
      ok = false;
      details.push_back(detail);
    }
  }
  void note(const std::string& detail) { details.push_back("(info) " + detail); }
};

int g_failures = 0;

void report(int index, const std::string& name, const Block& block) {
  std::printf("[%s] criterion %d: %s\n", block.ok ? "PASS" : "FAIL", index, name.c_str());
  for (const std::string& d : block.details) std::printf("       %s\n", d.c_str());
  if (!block.ok) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

Rng& shared_rng() {
  static Rng rng(0x5eedULL);
  return rng;
}

PureState random_state(const QuditSystem& sys) {
  Vector v(sys.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = cxd{shared_rng().gaussian(), shared_rng().gaussian()};
  v /= v.norm();
  return {sys, std::move(v)};
}

DensityMatrix random_density(const QuditSystem& sys, int rank) {
  Matrix rho = Matrix::Zero(sys.dim(), sys.dim());
  double total = 0.0;
  for (int k = 0; k < rank; ++k) {
    const PureState psi = random_state(sys);
    const double w = shared_rng().uniform() + 1e-3;
    rho += w * (psi.amp * psi.amp.adjoint());
    total += w;
  }
  rho /= total;
  return {sys, std::move(rho)};
}

Matrix matrix_power(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

double combined_se(const MeanSe& a, const MeanSe& b) {
  return std::sqrt(a.se * a.se + b.se * b.se);
}

MeanSe bare_mean(int n, int d, bool pair, ChannelKind kind, double t, std::uint64_t seed,
                 std::size_t samples = 2000) {
  return mean_transfer_fidelity(n, d, pair, nullptr, kind, t, samples, seed);
}

MeanSe encoded_mean(int n, const EncodingSpec& spec, ChannelKind kind, double t,
                    std::uint64_t seed, std::size_t samples = 2000) {
  return mean_transfer_fidelity(n, spec.d, spec.pair, &spec, kind, t, samples, seed);
}

// --------------------------------------------------------------------------

void criterion_1() {
  Block block;
  for (int d = 2; d <= 6; ++d) {
    for (double gamma : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
      const double residual = ad_kraus(d, gamma).completeness_residual();
      block.expect(residual <= 1e-10,
                   fmt("AD completeness d=%.0f gamma=%.2f residual=%.2e", d, gamma, residual));
    }
    for (double tau : {0.0, 0.5, 2.0, 10.0, 30.0}) {
      const double residual = pd_kraus(d, tau).completeness_residual();
      block.expect(residual <= 1e-10,
                   fmt("PD completeness d=%.0f tau=%.1f residual=%.2e", d, tau, residual));
    }
  }

  for (int d = 2; d <= 6; ++d)
    for (double t : {0.1, 1.0, 3.0}) {
      const DensityMatrix rho0 = random_density(QuditSystem(d, 1), d);
      const DensityMatrix ode = lindblad_ad_reference(rho0, 1.0, t);
      const DensityMatrix kraus = apply_single(rho0, 1, ad_kraus(d, std::exp(-t)));
      const double dist = trace_distance(ode, kraus);
      block.expect(dist <= 1e-6, fmt("Lindblad vs Kraus d=%.0f t=%.1f dist=%.2e", d, t, dist));
    }

  for (int d = 2; d <= 6; ++d)
    for (double tau : {0.3, 2.0, 15.0}) {
      const DensityMatrix rho = random_density(QuditSystem(d, 1), d);
      const double diff =
          (apply_single(rho, 1, pd_kraus(d, tau)).rho - pd_closed_form(rho, tau).rho)
              .cwiseAbs()
              .maxCoeff();
      block.expect(diff <= 1e-12, fmt("PD closed form d=%.0f tau=%.1f diff=%.2e", d, tau, diff));
    }
  for (double tau : {0.4, 3.0}) {
    const DensityMatrix rho = random_density(QuditSystem(3, 2), 4);
    const double diff =
        (apply_all(rho, ChannelSpec{ChannelKind::PhaseDamping, 1.0, tau}).rho -
         pd_closed_form(rho, tau).rho)
            .cwiseAbs()
            .maxCoeff();
    block.expect(diff <= 1e-12, fmt("PD closed form 2 qutrits tau=%.1f diff=%.2e", tau, diff));
  }

  report(1, "channel correctness (completeness, Lindblad cross-check, dephasing law)", block);
}

void criterion_2() {
  Block block;
  for (int d = 2; d <= 4; ++d)
    for (int n = 2; n <= 5; ++n) {
      const ClusterGraph graph = ClusterGraph::linear(n);
      const StabilizerReport report_ = stabilizer_check(build_cluster(graph, d, {}), graph);
      for (std::size_t a = 0; a < report_.residuals.size(); ++a)
        block.expect(report_.residuals[a] <= 1e-10,
                     fmt("stabilizer residual d=%.0f n=%.0f site=%.0f res=%.2e",
                         d, n, static_cast<double>(a + 1), report_.residuals[a]));
    }
  report(2, "cluster correctness (eigenvalue equations, n<=5, d<=4)", block);
}

void criterion_3() {
  Block block;
  double worst_bbb1 = 0.0, worst_transfer = 0.0, worst_decode = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const PureState psi = random_state(QuditSystem(d, 1));
    std::vector<double> alphas;
    for (int k = 0; k < d; ++k)
      alphas.push_back(shared_rng().uniform(0.0, 2.0 * std::numbers::pi));

    // circuit model: F Z({-alpha}) |psi>
    std::vector<double> neg(alphas);
    for (double& a : neg) a = -a;
    const Vector expected = fourier(d).mat * z_alpha(d, neg).mat * psi.amp;
    const Matrix target = expected * expected.adjoint();
    const ProtocolResult branch0 = bbb1(psi, alphas, 0);
    worst_bbb1 = std::max(worst_bbb1, (branch0.state.rho - target).cwiseAbs().maxCoeff());

    for (int s = 1; s < d; ++s) {
      const ProtocolResult branch = bbb1(psi, alphas, s);
      const Matrix x_s = matrix_power(gen_x(d).mat, s);
      worst_decode = std::max(
          worst_decode,
          (x_s * branch.state.rho * x_s.adjoint() - branch0.state.rho).cwiseAbs().maxCoeff());
    }

    const int n = 2 + trial % 4;
    const Vector propagated = matrix_power(fourier(d).mat, n - 1) * psi.amp;
    const Matrix ptarget = propagated * propagated.adjoint();
    const ProtocolResult moved = transfer(n, d, psi);
    worst_transfer = std::max(worst_transfer, (moved.state.rho - ptarget).cwiseAbs().maxCoeff());
  }
  block.expect(worst_bbb1 <= 1e-10, fmt("bbb1 vs circuit model residual=%.2e", worst_bbb1));
  block.expect(worst_transfer <= 1e-10, fmt("transfer vs F^{n-1} residual=%.2e", worst_transfer));
  block.expect(worst_decode <= 1e-10,
               fmt("decoded branches vs outcome-0 residual=%.2e", worst_decode));
  report(3, "noiseless patterns equal the circuit model (100 random inputs)", block);
}

void criterion_4() {
  Block block;

  for (int n = 2; n <= 5; ++n) {
    const MeanSe stat = bare_mean(n, 2, false, ChannelKind::AmplitudeDamping, 40.0, 101 + n);
    block.expect(std::abs(stat.mean - 2.0 / 3.0) <= 3.0 * stat.se,
                 fmt("AD qubit tail n=%.0f mean=%.4f se=%.4f vs 2/3", n, stat.mean, stat.se));
  }

  // at the tau = 40 stand-in the dephased state still carries coherence
  // remnants of size e^{-20}; the limit integrand is a constant, so the
  // statistical error collapses below that deterministic residue. The
  // tolerance carries an explicit 1e-8 floor for the remnant.
  for (int d = 2; d <= 4; ++d)
    for (int n = 2; n <= 5; ++n) {
      const MeanSe stat = bare_mean(n, d, false, ChannelKind::PhaseDamping, 40.0, 201 + 10 * d + n);
      const double target = 1.0 / std::sqrt(static_cast<double>(d));
      block.expect(std::abs(stat.mean - target) <= 3.0 * stat.se + 1e-8,
                   fmt("PD tail d=%.0f n=%.0f mean=%.4f vs %.4f", d, n, stat.mean, target));
    }

  for (int d = 2; d <= 4; ++d) {
    const MeanSe stored = bare_mean(1, d, false, ChannelKind::PhaseDamping, 40.0, 301 + d);
    const MeanSe moved = bare_mean(2, d, false, ChannelKind::PhaseDamping, 40.0, 311 + d);
    const double gap = stored.mean - moved.mean;
    block.expect(gap >= 3.0 * combined_se(stored, moved),
                 fmt("PD stored vs propagated d=%.0f gap=%.4f", d, gap));
  }

  report(4, "analytic limits (2/3 qubit tail, 1/sqrt(d) dephasing tail, stored > propagated)",
         block);
}

void criterion_5() {
  Block block;

  // (a) single-qudit mean fidelity chain d=2 > 2x2 > d=3 > d=4, both channels
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping}) {
    const char* tag = kind == ChannelKind::AmplitudeDamping ? "AD" : "PD";
    for (double t : {0.5, 1.0, 2.0}) {
      const MeanSe d2 = bare_mean(1, 2, false, kind, t, 401);
      const MeanSe pair = bare_mean(1, 4, true, kind, t, 402);
      const MeanSe d3 = bare_mean(1, 3, false, kind, t, 403);
      const MeanSe d4 = bare_mean(1, 4, false, kind, t, 404);
      const MeanSe* chain[4] = {&d2, &pair, &d3, &d4};
      const char* labels[4] = {"d=2", "2x2", "d=3", "d=4"};
      for (int i = 0; i < 3; ++i) {
        const double gap = chain[i]->mean - chain[i + 1]->mean;
        block.expect(gap >= 3.0 * combined_se(*chain[i], *chain[i + 1]),
                     std::string(tag) + fmt(" t=%.1f ", t) + labels[i] + " vs " + labels[i + 1] +
                         fmt(": means %.4f vs %.4f, gap %.4f", chain[i]->mean,
                             chain[i + 1]->mean, gap));
      }
    }
  }

  // (b) bare cluster fidelity ordering, n = 3
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping}) {
    const char* tag = kind == ChannelKind::AmplitudeDamping ? "AD" : "PD";
    for (double t : {0.5, 1.0, 2.0}) {
      double previous = 2.0;
      for (int d : {2, 3, 4}) {
        const PureState cluster = build_cluster(ClusterGraph::linear(3), d, {});
        const double value =
            fidelity(cluster, apply_all(to_density(cluster), ChannelSpec{kind, 1.0, t}));
        block.expect(value < previous,
                     std::string(tag) + fmt(" cluster fidelity t=%.1f d=%.0f value=%.4f "
                                            "not below the smaller dimension", t, d, value));
        previous = value;
      }
    }
  }

  // (c) normalized entanglement fraction ordering on the two-qudit cluster
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping}) {
    const char* tag = kind == ChannelKind::AmplitudeDamping ? "AD" : "PD";
    for (double t : {0.5, 1.0, 2.0}) {
      double previous = 2.0;
      for (int d : {2, 3, 4}) {
        const PureState cluster = build_cluster(ClusterGraph::linear(2), d, {});
        const DensityMatrix rho = apply_all(to_density(cluster), ChannelSpec{kind, 1.0, t});
        const double value = d == 2 ? wootters_concurrence(rho)
                                    : normalized_qp(rho, Bipartition{{1}}, d);
        block.expect(value < previous,
                     std::string(tag) +
                         fmt(" normalized concurrence t=%.1f d=%.0f value=%.4f not strictly "
                             "below the smaller dimension", t, d, value));
        previous = value;
      }
    }
  }

  if (!block.ok)
    block.note("single-qudit 2x2-vs-d=3 ordering and deep-time concurrence orderings are "
               "unreachable; see the decisions ledger analysis");
  report(5, "dimensional orderings at t in {0.5, 1, 2}", block);
}

void criterion_6() {
  Block block;

  // d = 4 amplitude damping tails by chain-length parity
  {
    std::vector<double> even_values, odd_values;
    MeanSe per_n[6];
    for (int n = 2; n <= 5; ++n) {
      per_n[n] = bare_mean(n, 4, false, ChannelKind::AmplitudeDamping, 40.0, 501 + n);
      (n % 2 == 0 ? even_values : odd_values).push_back(per_n[n].mean);
    }
    const double even = (even_values[0] + even_values[1]) / 2.0;
    const double odd = (odd_values[0] + odd_values[1]) / 2.0;
    const double se = 0.5 * std::sqrt(per_n[2].se * per_n[2].se + per_n[3].se * per_n[3].se +
                                      per_n[4].se * per_n[4].se + per_n[5].se * per_n[5].se);
    block.expect(odd - even >= 3.0 * se,
                 fmt("d=4 AD tails: even mean %.4f, odd mean %.4f, gap %.4f, 3*se %.4f",
                     even, odd, odd - even, 3.0 * se));
  }

  // d = 2: the two parities coincide
  {
    const MeanSe even = bare_mean(2, 2, false, ChannelKind::AmplitudeDamping, 40.0, 511);
    const MeanSe odd = bare_mean(3, 2, false, ChannelKind::AmplitudeDamping, 40.0, 512);
    block.expect(std::abs(even.mean - odd.mean) <= 3.0 * combined_se(even, odd),
                 fmt("d=2 AD tails diverge: %.4f vs %.4f", even.mean, odd.mean));
  }

  // dephasing: every chain length lands on 1/sqrt(d); the 1e-8 floor covers
  // the deterministic e^{-20} coherence remnant of the tau = 40 stand-in
  for (int d = 2; d <= 4; ++d)
    for (int n = 2; n <= 5; ++n) {
      const MeanSe stat = bare_mean(n, d, false, ChannelKind::PhaseDamping, 40.0, 521 + 10 * d + n);
      const double target = 1.0 / std::sqrt(static_cast<double>(d));
      block.expect(std::abs(stat.mean - target) <= 3.0 * stat.se + 1e-8,
                   fmt("PD tail d=%.0f n=%.0f mean=%.4f vs %.4f", d, n, stat.mean, target));
    }

  if (!block.ok)
    block.note("the even/odd tail split is unreachable: both limit integrands average "
               "|<v|psi>| for a fixed unit vector; see the decisions ledger analysis");
  report(6, "even/odd splitting of deep amplitude-damping tails", block);
}

void criterion_7() {
  Block block;
  const std::vector<double> grid{0.0, 0.4, 0.8, 1.2, 1.6, 2.0};
  const std::uint64_t seed = 601;
  const std::size_t samples = 2000;

  // exact subspace coincidences, pointwise in t with common sampled inputs
  const EncodingSpec bare = EncodingSpec::named('G', 2);
  for (double t : grid) {
    const double ref_ad = encoded_mean(1, bare, ChannelKind::AmplitudeDamping, t, seed, samples).mean;
    for (int d : {3, 4}) {
      const double value =
          encoded_mean(1, EncodingSpec::named('G', d), ChannelKind::AmplitudeDamping, t, seed, samples).mean;
      block.expect(std::abs(value - ref_ad) <= 1e-10,
                   fmt("AD n=1 G d=%.0f t=%.1f drifts from the bare qubit by %.2e",
                       d, t, std::abs(value - ref_ad)));
    }
    const double ref_pd = encoded_mean(1, bare, ChannelKind::PhaseDamping, t, seed, samples).mean;
    for (int d : {3, 4})
      for (char letter : {'G', 'T'}) {
        const double value =
            encoded_mean(1, EncodingSpec::named(letter, d), ChannelKind::PhaseDamping, t, seed, samples).mean;
        block.expect(std::abs(value - ref_pd) <= 1e-10,
                     std::string("PD n=1 ") + letter +
                         fmt(" d=%.0f t=%.1f drifts by %.2e", d, t, std::abs(value - ref_pd)));
      }
  }

  // deep-damping tail of the top encoding vanishes; evaluated at t=100 where
  // the sqrt-scale residual sqrt(gamma) is below the stated tolerance
  for (int d : {3, 4}) {
    const double tail =
        encoded_mean(1, EncodingSpec::named('T', d), ChannelKind::AmplitudeDamping, 100.0, seed).mean;
    block.expect(tail <= 1e-10, fmt("T tail d=%.0f mean=%.2e", d, tail));
  }

  // comparatives: the lopsided encoding is the worst dephasing propagator
  for (int n : {2, 3})
    for (double t : {0.5, 1.0})
      for (int d : {3, 4}) {
        const MeanSe l = encoded_mean(n, EncodingSpec::named('L', d), ChannelKind::PhaseDamping, t, 611);
        for (char other : {'G', 'T'}) {
          const MeanSe o =
              encoded_mean(n, EncodingSpec::named(other, d), ChannelKind::PhaseDamping, t, 612);
          block.expect(o.mean - l.mean >= 3.0 * combined_se(l, o),
                       fmt("PD n=%.0f t=%.1f d=%.0f: L not clearly worst (gap %.4f)",
                           n, t, d, o.mean - l.mean));
        }
      }

  // no encoding beats the bare qubit cluster
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping})
    for (int n : {2, 3})
      for (double t : {0.5, 1.0}) {
        const MeanSe qubit = encoded_mean(n, bare, kind, t, 621);
        std::vector<EncodingSpec> specs;
        for (int d : {3, 4})
          for (char letter : {'G', 'T', 'L', 'E'}) specs.push_back(EncodingSpec::named(letter, d));
        for (char letter : {'L', 'O', 'M', 'E'}) specs.push_back(EncodingSpec::named(letter, 4, true));
        for (const EncodingSpec& spec : specs) {
          const MeanSe enc = encoded_mean(n, spec, kind, t, 622);
          block.expect(qubit.mean - enc.mean >= 3.0 * combined_se(qubit, enc),
                       fmt("encoding beats the qubit cluster? n=%.0f t=%.1f gap=%.4f",
                           n, t, qubit.mean - enc.mean));
        }
      }

  report(7, "encoding coincidences and comparatives", block);
}

void criterion_8() {
  Block block;

  double worst_pure = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int kind = trial % 4;
    const QuditSystem sys = kind == 0   ? QuditSystem(2, 2)
                            : kind == 1 ? QuditSystem(3, 2)
                            : kind == 2 ? QuditSystem(4, 2)
                                        : QuditSystem(2, 3);
    const PureState psi = random_state(sys);
    const Bipartition split{{1}};
    const double diff = std::abs(quasi_pure_concurrence(to_density(psi), split).c_qp -
                                 pure_concurrence(psi, split));
    worst_pure = std::max(worst_pure, diff);
  }
  block.expect(worst_pure <= 1e-8, fmt("pure-state agreement residual=%.2e", worst_pure));

  double worst_bound = -1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int rank = 1 + trial % 4;
    const DensityMatrix rho = random_density(QuditSystem(2, 2), rank);
    const double over = quasi_pure_concurrence(rho, Bipartition{{1}}).c_qp -
                        wootters_concurrence(rho);
    worst_bound = std::max(worst_bound, over);
  }
  block.expect(worst_bound <= 1e-8, fmt("exceeds the two-qubit concurrence by %.2e", worst_bound));

  // rank-2 states against the best two-term decomposition
  double worst_rank2 = -1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density(QuditSystem(2, 2), 2);
    const EigSystem eig = eig_system(rho);
    Matrix cleaned = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      cleaned += eig.values(i) * (eig.vectors.col(i) * eig.vectors.col(i).adjoint());
    cleaned /= cleaned.trace().real();
    const DensityMatrix rank2{rho.system, cleaned};

    const Bipartition split{{1}};
    const double c_qp = quasi_pure_concurrence(rank2, split).c_qp;

    // scan all two-term decompositions over the decomposition circle
    const Vector v1 = std::sqrt(eig.values(0)) * eig.vectors.col(0);
    const Vector v2 = std::sqrt(eig.values(1)) * eig.vectors.col(1);
    double best = 1e9;
    for (int it = 0; it <= 60; ++it)
      for (int ip = 0; ip < 60; ++ip) {
        const double theta = std::numbers::pi / 2.0 * it / 60.0;
        const double phi = 2.0 * std::numbers::pi * ip / 60.0;
        const cxd e{std::cos(phi), std::sin(phi)};
        double acc = 0.0;
        for (int side = 0; side < 2; ++side) {
          const Vector chi = side == 0
                                 ? Vector(std::cos(theta) * v1 + e * std::sin(theta) * v2)
                                 : Vector(-std::conj(e) * std::sin(theta) * v1 +
                                          std::cos(theta) * v2);
          const double w = chi.squaredNorm();
          if (w < 1e-14) continue;
          acc += w * pure_concurrence(PureState{rho.system, chi / std::sqrt(w)}, split);
        }
        best = std::min(best, acc);
      }
    worst_rank2 = std::max(worst_rank2, c_qp - best);
  }
  block.expect(worst_rank2 <= 1e-8,
               fmt("exceeds the rank-2 decomposition bound by %.2e", worst_rank2));

  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = to_density(build_cluster(ClusterGraph::linear(2), d, {}));
    const double diff =
        std::abs(quasi_pure_concurrence(rho, Bipartition{{1}}).c_qp - max_concurrence(d));
    block.expect(diff <= 1e-10, fmt("fresh cluster d=%.0f misses sqrt(2(1-1/d)) by %.2e", d, diff));
  }

  report(8, "entanglement suite (pure agreement, lower bounds, fresh-cluster values)", block);
}

void criterion_9() {
  Block block;

  // condition <-> unitarity, constructed and random sets
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> alphas;
      if (trial == 0) {
        alphas = entangling_angles(d);
      } else if (trial == 1 && d == 2) {
        alphas = {0.0, std::numbers::pi / 2.0};
      } else {
        for (int k = 0; k < d; ++k)
          alphas.push_back(shared_rng().uniform(0.0, 2.0 * std::numbers::pi));
      }
      const Operator t = t13(d, alphas, 0);
      const double residual =
          (t.mat.adjoint() * t.mat - Matrix::Identity(t.dim(), t.dim())).cwiseAbs().maxCoeff();
      const bool unitary = residual <= 1e-10;
      const bool condition = unitarity_condition(d, alphas).holds;
      block.expect(condition == unitary,
                   fmt("condition/unitarity mismatch d=%.0f residual=%.2e", d, residual));
    }
  }

  // noiseless heralded entanglement is maximal
  for (int d : {2, 3, 4}) {
    const ProtocolResult out = bbb3(plus_state(d), plus_state(d), entangling_angles(d), 0);
    const EigSystem eig = eig_system(out.state);
    const PureState vec{out.state.system, eig.vectors.col(0)};
    const double diff = std::abs(pure_concurrence(vec, Bipartition{{1}}) - max_concurrence(d));
    block.expect(eig.values(0) >= 1.0 - 1e-10 && diff <= 1e-10,
                 fmt("noiseless heralded pair d=%.0f purity=%.12f c-diff=%.2e",
                     d, eig.values(0), diff));
  }

  // decohered orderings: encoded pair between the bare d=2 and bare d=4 curves
  const Vector emb = (Vector(4) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 0.0).finished();
  const PureState encoded_plus{QuditSystem(4, 1), emb};
  for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping}) {
    const char* tag = kind == ChannelKind::AmplitudeDamping ? "AD" : "PD";
    for (double t : {0.5, 1.0}) {
      const ChannelSpec spec{kind, 1.0, t};

      const ProtocolResult bare2 =
          bbb3(plus_state(2), plus_state(2), entangling_angles(2), 0, spec);
      const double c2 = wootters_concurrence(bare2.state);

      const ProtocolResult bare4 =
          bbb3(plus_state(4), plus_state(4), entangling_angles(4), 0, spec);
      const double c4 = normalized_qp(bare4.state, Bipartition{{1}}, 4);

      // whole pattern confined to the two lowest levels
      const PureState cluster = build_cluster(
          ClusterGraph::linear(3), 4, {{1, encoded_plus}, {2, encoded_plus}, {3, encoded_plus}});
      DensityMatrix rho = apply_all(to_density(cluster), spec);
      const MeasureResult m = measure_site(rho, 2, MeasurementBasis{4, entangling_angles(4)}, 0);
      Matrix blockm(4, 4);
      const Eigen::Index idx[4] = {0, 1, 4, 5};
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) blockm(r, c) = m.state.rho(idx[r], idx[c]);
      blockm /= blockm.trace().real();
      const double ce = wootters_concurrence(DensityMatrix{QuditSystem(2, 2), blockm});

      // deterministic quantities: the stated margin 3*SE is zero
      block.expect(c2 - ce >= 0.0 && ce - c4 >= 0.0,
                   std::string(tag) + fmt(" t=%.1f: c(d2)=%.4f c(enc)=%.4f c~(d4)=%.4f "
                                          "not ordered", t, c2, ce, c4));
      block.note(std::string(tag) + fmt(" t=%.1f: c(d2)=%.4f, c(enc)=%.4f, c~(d4)=%.4f",
                                        t, c2, ce, c4));
    }
  }

  report(9, "heralded gate: unitarity condition, maximal entanglement, encoded orderings", block);
}

void criterion_10() {
  Block block;

  ExperimentConfig sweep;
  sweep.experiment = "transfer-sweep";
  sweep.d = 3;
  sweep.n = 2;
  sweep.channel = ChannelKind::PhaseDamping;
  sweep.t_min = 0.0;
  sweep.t_max = 2.0;
  sweep.steps = 5;
  sweep.samples = 300;
  sweep.seed = 12345;
  block.expect(run_experiment(sweep).to_string() == run_experiment(sweep).to_string(),
               "transfer-sweep rerun differs");

  ExperimentConfig gate;
  gate.experiment = "gate-entanglement";
  gate.d = 4;
  gate.channel = ChannelKind::AmplitudeDamping;
  gate.t_min = 0.0;
  gate.t_max = 1.0;
  gate.steps = 4;
  gate.seed = 9;
  block.expect(run_experiment(gate).to_string() == run_experiment(gate).to_string(),
               "gate-entanglement rerun differs");

  ExperimentConfig enc;
  enc.experiment = "encoding-sweep";
  enc.d = 4;
  enc.n = 2;
  enc.encoding = "L";
  enc.channel = ChannelKind::PhaseDamping;
  enc.t_min = 0.0;
  enc.t_max = 1.0;
  enc.steps = 3;
  enc.samples = 200;
  enc.seed = 77;
  block.expect(run_experiment(enc).to_string() == run_experiment(enc).to_string(),
               "encoding-sweep rerun differs");

  report(10, "byte-identical reruns from (config, seed)", block);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("================\n%d of 10 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
