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
#include <functional>
#include <random>
#include <vector>

#include "quditsim/algebra.hpp"

namespace quditsim {

/// State fidelity sqrt(<psi|rho|psi>). Amplitude convention: a pure target
/// against the maximally mixed state gives 1/sqrt(d), not 1/d.
double fidelity(const PureState& psi, const DensityMatrix& rho);
double fidelity(const PureState& psi, const PureState& phi);

/// (1/2) ||a - b||_1
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Angle coordinates covering the pure-state manifold of one qudit:
/// theta_k in [0, pi/2], phi_k in [0, 2 pi), k = 1..d-1.
struct HurwitzPoint {
  std::vector<double> thetas;
  std::vector<double> phis;
};

/// c_0 = cos t1, c_j = (prod_{k<=j} sin t_k) cos t_{j+1} e^{i phi_j},
/// c_{d-1} = (prod sin t_k) e^{i phi_{d-1}}.
PureState hurwitz_state(const HurwitzPoint& point, int d);

/// Deterministic RNG wrapper. Uniforms are built from raw 64-bit draws so the
/// stream does not depend on library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Decorrelated per-sample seed; sample i of a run is a pure function of
/// (master, i), so sampling loops can be partitioned across workers without
/// changing any result.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

enum class SampleMethod {
  HurwitzInverseCdf,   // draw each theta_k from its closed-form CDF sin^{2k}
  GaussianNormalize,   // normalize a complex Gaussian vector
};

/// Samples single-qudit pure states uniformly under the unitarily invariant
/// measure. Both methods target the same distribution and are cross-checked
/// in the test suite.
class StateSampler {
 public:
  StateSampler(int d, std::uint64_t seed, SampleMethod method = SampleMethod::HurwitzInverseCdf);

  PureState sample();
  HurwitzPoint sample_point();  // advances the same sample counter

  int dimension() const { return d_; }

 private:
  int d_;
  std::uint64_t seed_;
  SampleMethod method_;
  std::uint64_t counter_ = 0;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  std::size_t samples = 0;
};

MeanSe mean_se(std::span<const double> values);

/// Monte-Carlo mean of `protocol` over input states of dimension d, with the
/// standard error of the mean. Deterministic given (samples, seed).
MeanSe average_fidelity(const std::function<double(const PureState&)>& protocol, int d,
                        std::size_t samples, std::uint64_t seed,
                        SampleMethod method = SampleMethod::HurwitzInverseCdf);

enum class LengthParity { Odd, Even };

/// Large-time limit of the average amplitude-damped transfer fidelity,
/// estimated by Monte Carlo: the odd-length integrand is |c_0|, the
/// even-length one is d^{-1/2} |sum_i c_i|.
MeanSe asymptotic_ad_limit(int d, LengthParity parity, std::size_t samples = 1000000,
                           std::uint64_t seed = 0x9e3779b9ull);

/// Sites (1-based) forming the first half of a bipartite split; the rest of
/// the register forms the second half.
struct Bipartition {
  std::vector<int> first;
};

/// sqrt(2 (1 - Tr rho_r^2)) with rho_r the reduced state of either half.
double pure_concurrence(const PureState& psi, const Bipartition& split);

/// Concurrence of the maximally entangled pair: sqrt(2 (1 - 1/d)).
double max_concurrence(int d);

/// Wootters concurrence of a two-qubit state from the spin-flip spectrum.
/// Eigenvalues of R below 1e-13 of the largest are treated as exact zeros
/// before the square root; they are pure numerical noise and would otherwise
/// leak O(1e-8) into the result.
double wootters_concurrence(const DensityMatrix& rho);

/// Eigendecomposition with non-increasing eigenvalues; values below `clamp`
/// are set to zero.
struct EigSystem {
  Eigen::VectorXd values;
  Matrix vectors;  // columns, matching `values`
};
EigSystem eig_system(const DensityMatrix& rho, double clamp = 1e-12);

struct QuasiPure {
  double c_qp = 0.0;
  double mu_ratio = 0.0;  // mu_2 / mu_1; the approximation is tight when small
};

/// Quasi-pure concurrence bound c_qp = max(lambda_1 - sum_{i>1} lambda_i, 0),
/// where lambda are the singular values of tau_jk = A_jk / sqrt(A_11) and
///   A_jk = mu_1 sqrt(mu_j mu_k) [ Tr(A_j A_k)
///                                - sum_{halves m} Tr(Tr_m A_j Tr_m A_k)
///                                + Tr(A_j) Tr(A_k) ],  A_j = |Phi_j><Phi_1|,
/// built from the eigensystem {mu_i, |Phi_i>}. Coincides with the pure-state
/// concurrence on rank-1 input and lower-bounds the two-qubit concurrence.
QuasiPure quasi_pure_concurrence(const DensityMatrix& rho, const Bipartition& split);

/// c_qp / c(Psi_d)
double normalized_qp(const DensityMatrix& rho, const Bipartition& split, int d);

}  // namespace quditsim
