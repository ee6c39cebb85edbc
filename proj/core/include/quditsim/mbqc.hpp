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

#include <optional>
#include <span>
#include <vector>

#include "quditsim/channels.hpp"
#include "quditsim/cluster.hpp"

namespace quditsim {

/// Single-site measurement basis B({alpha}) = { Z({alpha}) |+_j> }, defined
/// by d angles.
struct MeasurementBasis {
  int d = 2;
  std::vector<double> alphas;

  Vector vector(int outcome) const;
  Matrix matrix() const;  // basis vectors as columns
  double orthonormality_error() const;
};

/// Probability below which a measurement branch is flagged as unphysical to
/// post-select on.
inline constexpr double kZeroProbability = 1e-14;

struct MeasureResult {
  double probability = 0.0;
  DensityMatrix state;  // remaining sites; renormalized unless the branch is flagged
  bool zero_probability = false;
};

/// Projects `site` onto the outcome vector of `basis`, traces the site out
/// and renormalizes. The returned probability is the pre-normalization trace.
MeasureResult measure_site(const DensityMatrix& rho, int site, const MeasurementBasis& basis,
                           int outcome);

struct ProtocolResult {
  DensityMatrix state;
  double probability = 1.0;
  bool zero_probability = false;
};

/// Two-site pattern: logical input on site 1, site 1 measured in B({alpha}).
/// Noiseless with outcome 0 the output is F Z({-alpha}) |psi>; other outcomes
/// differ by the byproduct X^{-s}, undone by the decoding operator X^s. With
/// noise, both qudits are exposed for the channel's full time first.
ProtocolResult bbb1(const PureState& logical, std::span<const double> alphas, int outcome,
                    const std::optional<ChannelSpec>& noise = {});
ProtocolResult bbb1(const DensityMatrix& logical, std::span<const double> alphas, int outcome,
                    const std::optional<ChannelSpec>& noise = {});

/// Linear-cluster state transfer. Builds the n-site chain with the logical
/// input on site 1, exposes every qudit to the channel, then measures sites
/// 1..n-1 in B({0}) post-selected on outcome 0. n = 1 is a stored, never
/// measured qudit. Noiseless output is F^{n-1} |psi>.
ProtocolResult transfer(int n, int d, const PureState& input,
                        const std::optional<ChannelSpec>& noise = {});

/// Two logical inputs on the two-site cluster; simulates the entangling gate
/// S_12 (no measurement). With noise both qudits are exposed before readout.
DensityMatrix bbb2(const PureState& q1, const PureState& q2,
                   const std::optional<ChannelSpec>& noise = {});

/// Three-site pattern with logical inputs on sites 1 and 3; the middle site
/// starts in |+> and is measured in B({alpha}) with outcome s2. Noiseless the
/// output equals T13(s2) applied to the inputs up to branch normalization.
ProtocolResult bbb3(const PureState& q1, const PureState& q3, std::span<const double> alphas,
                    int outcome, const std::optional<ChannelSpec>& noise = {});

/// T13(s2) = d^{-1/2} sum_{k,l} [ sum_j omega^{j(k+l-s2)} e^{-i alpha_j} ] |k,l><k,l|
Operator t13(int d, std::span<const double> alphas, int s2);

/// Diagonal phase gate sum_{k,l} e^{i alpha_{-(k+l)}} |k,l><k,l|.
Operator u13(int d, std::span<const double> alphas);

struct UnitarityReport {
  bool holds = false;               // | sum_j omega^{jm} e^{-i alpha_j} |^2 = d for all m
  std::vector<double> residuals;    // one per value of m = (k+l) mod d
  bool phase_holds = false;         // d^{-1} sum_j omega^{jm} e^{-i alpha_j} = e^{i alpha_{-m}}
  std::vector<double> phase_residuals;
};

UnitarityReport unitarity_condition(int d, std::span<const double> alphas, double tol = 1e-10);

/// Quadratic-phase angle set alpha_j proportional to j^2 that satisfies the
/// unitarity condition for every d (Gauss-sum magnitudes).
std::vector<double> entangling_angles(int d);

/// Two-qutrit gate: phase e^{2 pi i / 3} on |1,1>, identity on the rest of
/// the 9-dimensional space (qutrit level 2 is never populated by encoded
/// qubits, so identity is the minimal completion).
Operator e12_gate();

// ---------------------------------------------------------------------------
// Encodings of one logical qubit
// ---------------------------------------------------------------------------

enum class Encoding { Ground, Top, Lopsided, Outside, Middle, Equal, General };

/// A logical qubit carried by one d-level qudit or by an entangled pair of
/// qubits (`pair` = true, physical dimension 4, binary site labels).
struct EncodingSpec {
  Encoding kind = Encoding::Ground;
  int d = 2;
  bool pair = false;
  Matrix lambda;            // General: explicit d x d unitary
  Eigen::VectorXcd r_phases;  // General: diagonal phases completing embedded operations

  /// Named Table-style encodings: G, T, L, O, M, E. O and M exist only for
  /// the qubit pair; T needs d >= 3; G also accepts d = 2 (the bare qubit).
  static EncodingSpec named(char letter, int d, bool pair = false);
  static EncodingSpec general(Matrix lambda, Eigen::VectorXcd r_phases);

  int physical_dim() const { return pair ? 4 : d; }
  void validate() const;
};

/// The encoded state of the logical qubit a|0> + b|1>. Requires
/// |a|^2 + |b|^2 = 1; every encoding is an isometry of the logical space.
PureState encode(const EncodingSpec& spec, cxd a, cxd b);

/// Lifts a logical-space operation into the physical space:
/// Lambda (chi (+) R) Lambda^dagger, with R the diagonal phase block on the
/// orthogonal complement.
Operator embedded_operation(const EncodingSpec& spec, const Matrix& chi_logical);

struct EncodedTransfer {
  DensityMatrix state;   // physical space: d-dim qudit or two qubits
  PureState ideal;       // noiselessly propagated encoded state
  double probability = 1.0;
  double fidelity_value = 0.0;  // fidelity(ideal, state)
};

/// Encodes, propagates along the length-n cluster (or stores for n = 1) and
/// reports the fidelity against the ideally propagated encoded state. Pair
/// encodings run as two parallel qubit chains whose first sites carry the
/// entangled encoded pair.
EncodedTransfer encoded_transfer(int n, const EncodingSpec& spec, cxd a, cxd b,
                                 const std::optional<ChannelSpec>& noise = {});

/// Transfer of a two-qubit input along two parallel n-site qubit chains,
/// with both chains measured site by site and post-selected on outcome 0.
/// Noiseless output is (F (x) F)^{n-1} applied to the input pair.
ProtocolResult pair_transfer(int n, const PureState& pair_input,
                             const std::optional<ChannelSpec>& noise = {});

// ---------------------------------------------------------------------------
// Byproduct bookkeeping
// ---------------------------------------------------------------------------

/// Accumulated byproduct exponents per qudit; the pending decoding operator
/// on qudit q is X^{x_q} Z^{z_q}, exponents mod d.
struct OutcomeRecord {
  int d = 2;
  std::vector<int> x;
  std::vector<int> z;

  static OutcomeRecord empty(int d, int qudits);
};

enum class MbqcGateKind { Fourier, PhaseRotation, Entangle };

struct MbqcGate {
  MbqcGateKind kind = MbqcGateKind::Fourier;
  int site = 1;
  int site2 = 2;               // Entangle only
  std::vector<double> alphas;  // PhaseRotation only
};

struct PushResult {
  OutcomeRecord record;
  std::vector<MbqcGate> gates;  // rewritten sequence (angle sets may shift)
};

/// Commutes the byproduct operator from the input side of `gates` to the
/// output side:
///   F X^x Z^z        = X^z Z^{-x} F            (up to a global phase)
///   Z({a}) X^x Z^z   = X^x Z^z Z({a'}),  a'_j = a_{j-x}
///   S_12 X-parts     : z_1 -= x_2, z_2 -= x_1
PushResult byproduct_propagate(const OutcomeRecord& record, std::span<const MbqcGate> gates);

/// The tensor-product operator prod_q X^{x_q} Z^{z_q}.
Operator byproduct_operator(const OutcomeRecord& record, const QuditSystem& system);

}  // namespace quditsim
