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

#include <map>
#include <utility>
#include <vector>

#include "quditsim/algebra.hpp"

namespace quditsim {

/// Undirected graph on sites 1..n. No self loops, no duplicate edges.
struct ClusterGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  static ClusterGraph linear(int n);

  void validate() const;
  std::vector<int> neighbors(int site) const;
};

/// S_ab = sum_{k,l} omega^{kl} |k,l><k,l| on sites a and b, identity elsewhere.
/// Diagonal, hence symmetric under a <-> b and commuting across edges.
Operator entangling_gate(int d, int site_a, int site_b, const QuditSystem& system);

/// Applies the product of edge gates to a site-wise product state. Sites not
/// present in `inputs` start in |+>; inputs must be single-qudit states of
/// dimension d.
PureState build_cluster(const ClusterGraph& graph, int d,
                        const std::map<int, PureState>& inputs = {});

struct StabilizerReport {
  std::vector<double> residuals;  // ||K^(a)|phi> - |phi>|| per site
  std::vector<bool> pass;
  bool all_pass = false;
};

/// Evaluates the correlation operators K^(a) = X^dagger_a prod_{b~a} Z_b on
/// every site and reports the eigenvalue-equation residuals.
StabilizerReport stabilizer_check(const PureState& state, const ClusterGraph& graph,
                                  double tol = 1e-10);

/// d^{-1/2} sum_k |k>^{(x) n}
PureState ghz_state(int n, int d);

}  // namespace quditsim
