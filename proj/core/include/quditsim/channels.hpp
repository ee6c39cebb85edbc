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

#include <vector>

#include "quditsim/algebra.hpp"

namespace quditsim {

enum class ChannelKind { AmplitudeDamping, PhaseDamping };

/// One local decoherence channel: kind, coupling rate and exposure time.
///
/// Amplitude damping is parameterized by gamma(t) = e^{-rate * time} in
/// (0, 1]; phase damping by the rescaled time tau = rate * time >= 0.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::AmplitudeDamping;
  double rate = 1.0;
  double time = 0.0;

  double gamma() const;
  double tau() const;
  void validate() const;
};

/// Finite Kraus family for one d-dimensional site.
struct KrausSet {
  int d = 2;
  std::vector<Matrix> ops;

  /// || sum_mu K_mu^dagger K_mu - I ||_max
  double completeness_residual() const;
};

/// Amplitude damping operators
///   A_mu = sum_{n=mu}^{d-1} [C(n,mu) gamma^{n-mu} (1-gamma)^mu]^{1/2} |n-mu><n|
/// for mu = 0..d-1. Losing more than d-1 excitations is impossible in the
/// truncated space, so the family is complete as is.
KrausSet ad_kraus(int d, double gamma);

/// Phase damping as a finite Kraus family. The raw family
///   P_mu = sum_n e^{-n^2 tau/2} [(n^2 tau)^mu / mu!]^{1/2} |n><n|
/// has unbounded mu; its channel action only depends on the positive
/// coefficient matrix M_nm = e^{-tau (n-m)^2 / 2}, so we spectral-decompose M
/// and emit one diagonal operator per positive eigenvalue (at most d).
KrausSet pd_kraus(int d, double tau);

KrausSet kraus_set(const ChannelSpec& spec, int d);

/// sum_mu K_mu rho_site K_mu^dagger on the named site only.
DensityMatrix apply_single(const DensityMatrix& rho, int site, const KrausSet& kraus);

/// Applies the same per-site family independently to every site. Local maps
/// on distinct sites commute, so the site order is irrelevant.
DensityMatrix apply_all(const DensityMatrix& rho, const ChannelSpec& spec);

/// Elementwise dephasing law: entry (r, c) is scaled by
/// prod_i e^{-tau (n_i - m_i)^2 / 2} over the site digits of r and c.
/// Equals apply_all with pd_kraus; kept as an independent algebraic route.
DensityMatrix pd_closed_form(const DensityMatrix& rho, double tau);

/// Reference integrator for single-qudit amplitude damping at zero
/// temperature:
///   d rho / dt = rate (a rho a^dagger - {a^dagger a, rho} / 2)
/// with the truncated lowering operator a|k> = sqrt(k)|k-1>. Fixed-step RK4
/// with step <= max_step / rate. Used to cross-check ad_kraus; it shares no
/// code path with the Kraus construction.
DensityMatrix lindblad_ad_reference(const DensityMatrix& rho0, double rate, double time,
                                    double max_step = 1e-4);

/// Heisenberg-picture action sum_mu K_mu^dagger M K_mu on a local observable.
Matrix adjoint_apply(const KrausSet& kraus, const Matrix& observable);

}  // namespace quditsim
