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

#include "quditsim/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace quditsim {

ClusterGraph ClusterGraph::linear(int n) {
  if (n < 1) throw std::invalid_argument("ClusterGraph::linear: n must be >= 1");
  ClusterGraph g;
  g.n = n;
  for (int i = 1; i < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

void ClusterGraph::validate() const {
  if (n < 1) throw std::invalid_argument("ClusterGraph: n must be >= 1");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a == b) throw std::invalid_argument("ClusterGraph: self loop");
    if (a < 1 || a > n || b < 1 || b > n)
      throw std::invalid_argument("ClusterGraph: edge site out of range");
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) throw std::invalid_argument("ClusterGraph: duplicate edge");
  }
}

std::vector<int> ClusterGraph::neighbors(int site) const {
  std::vector<int> out;
  for (auto [a, b] : edges) {
    if (a == site) out.push_back(b);
    if (b == site) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Operator entangling_gate(int d, int site_a, int site_b, const QuditSystem& system) {
  system.check_site(site_a);
  system.check_site(site_b);
  if (site_a == site_b) throw std::invalid_argument("entangling_gate: sites must differ");
  if (system.d != d) throw std::invalid_argument("entangling_gate: dimension mismatch");
  Matrix m = Matrix::Zero(system.dim(), system.dim());
  for (std::size_t i = 0; i < system.dim(); ++i) {
    const long long k = system.digit(i, site_a);
    const long long l = system.digit(i, site_b);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = omega(d, k * l);
  }
  return {std::move(m)};
}

PureState build_cluster(const ClusterGraph& graph, int d,
                        const std::map<int, PureState>& inputs) {
  graph.validate();
  QuditSystem sys(d, graph.n);
  for (const auto& [site, state] : inputs) {
    sys.check_site(site);
    if (state.system.n != 1 || state.system.d != d)
      throw std::invalid_argument("build_cluster: input must be one qudit of dimension d");
  }

  // product of per-site inputs, |+> where absent
  Vector amp = Vector::Ones(sys.dim());
  const Vector plus = plus_state(d).amp;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    cxd v = 1.0;
    for (int s = 1; s <= graph.n; ++s) {
      const int k = sys.digit(i, s);
      auto it = inputs.find(s);
      v *= (it != inputs.end()) ? it->second.amp(k) : plus(k);
    }
    amp(static_cast<Eigen::Index>(i)) = v;
  }

  // all edge gates are diagonal phases
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    long long exponent = 0;
    for (auto [a, b] : graph.edges)
      exponent += static_cast<long long>(sys.digit(i, a)) * sys.digit(i, b);
    amp(static_cast<Eigen::Index>(i)) *= omega(d, exponent);
  }
  return {sys, std::move(amp)};
}

StabilizerReport stabilizer_check(const PureState& state, const ClusterGraph& graph, double tol) {
  graph.validate();
  const QuditSystem& sys = state.system;
  if (sys.n != graph.n) throw std::invalid_argument("stabilizer_check: graph/state size mismatch");

  StabilizerReport report;
  report.all_pass = true;
  const Matrix xdag = gen_x(sys.d).mat.adjoint();
  const Matrix z = gen_z(sys.d).mat;
  for (int a = 1; a <= graph.n; ++a) {
    Vector v = apply_local(state.amp, sys, a, xdag);
    for (int b : graph.neighbors(a)) v = apply_local(v, sys, b, z);
    const double residual = (v - state.amp).norm();
    report.residuals.push_back(residual);
    report.pass.push_back(residual <= tol);
    report.all_pass = report.all_pass && residual <= tol;
  }
  return report;
}

PureState ghz_state(int n, int d) {
  if (n < 2) throw std::invalid_argument("ghz_state: n must be >= 2");
  QuditSystem sys(d, n);
  Vector v = Vector::Zero(sys.dim());
  std::size_t repunit = 0;  // index of |k,k,..,k> is k * (1 + d + ... + d^{n-1})
  for (int s = 1; s <= n; ++s) repunit += sys.stride(s);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k)
    v(static_cast<Eigen::Index>(static_cast<std::size_t>(k) * repunit)) = norm;
  return {sys, std::move(v)};
}

}  // namespace quditsim
