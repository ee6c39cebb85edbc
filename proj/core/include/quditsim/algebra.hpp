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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace quditsim {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A register of n qudits with equal local dimension d.
///
/// Sites are 1-based. Site 1 is the leftmost tensor factor, i.e. the most
/// significant base-d digit of the flat index into the d^n dimensional space.
struct QuditSystem {
  int d = 2;
  int n = 1;

  QuditSystem() = default;
  QuditSystem(int local_dim, int sites);

  std::size_t dim() const { return dim_; }

  /// d^(n - site): distance in the flat index between consecutive values of
  /// the digit at `site`.
  std::size_t stride(int site) const;

  /// Base-d digit of `index` at `site`.
  int digit(std::size_t index, int site) const;

  void check_site(int site) const;

  friend bool operator==(const QuditSystem& a, const QuditSystem& b) {
    return a.d == b.d && a.n == b.n;
  }

 private:
  std::size_t dim_ = 2;
};

struct PureState {
  QuditSystem system;
  Vector amp;
};

struct DensityMatrix {
  QuditSystem system;
  Matrix rho;
};

/// A square matrix acting on one qudit, a group of qudits or a whole register.
struct Operator {
  Matrix mat;
  Eigen::Index dim() const { return mat.rows(); }
};

/// e^{2 pi i k / d}
cxd omega(int d, long long k = 1);

/// Z = sum_k omega^k |k><k|
Operator gen_z(int d);

/// X = sum_k |k-1><k| with modulo-d index arithmetic, so X|0> = |d-1>.
Operator gen_x(int d);

/// F = d^{-1/2} sum_{j,k} omega^{jk} |j><k|; maps |k> to |+_k>.
Operator fourier(int d);

/// Z({alpha}) = sum_k e^{i alpha_k} |k><k|. Requires exactly d angles.
Operator z_alpha(int d, std::span<const double> alphas);

Operator identity_op(Eigen::Index dim);
Operator dagger(const Operator& op);
Operator tensor(const Operator& a, const Operator& b);
PureState tensor(const PureState& a, const PureState& b);

/// |index> in the given register.
PureState basis_state(const QuditSystem& system, std::size_t index);

/// Single-qudit |+> = |+_0>.
PureState plus_state(int d);

/// Single-qudit |+_j> = d^{-1/2} sum_k omega^{jk} |k>.
PureState fourier_basis_state(int d, int j);

DensityMatrix to_density(const PureState& psi);

/// I_pre (x) op (x) I_post with `op` acting on the given site.
Operator embed_at_site(const Operator& local, const QuditSystem& system, int site);

/// Reduced state over `keep_sites` (ascending, 1-based); all other sites are
/// traced out. Preserves trace and Hermiticity.
DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep_sites);

PureState apply(const Operator& op, const PureState& psi);
DensityMatrix apply(const Operator& op, const DensityMatrix& rho);

/// (M acting on `site`) |v>, without forming the embedded operator.
Vector apply_local(const Vector& v, const QuditSystem& system, int site, const Matrix& m);

/// (M acting on sites a and b) |v>. `m` is d^2 x d^2 indexed by k_a*d + k_b.
Vector apply_two_site(const Vector& v, const QuditSystem& system, int site_a, int site_b,
                      const Matrix& m);

/// K rho K^dagger for a local d x d operator K on `site`.
Matrix conjugate_site(const Matrix& rho, const QuditSystem& system, int site, const Matrix& k);

// Invariant diagnostics. Checked at protocol boundaries and in tests rather
// than on every construction; channel and gate application at desk scale
// would otherwise spend most of its time re-verifying Hermiticity.
double norm_error(const PureState& psi);
double hermiticity_error(const DensityMatrix& rho);
double trace_error(const DensityMatrix& rho);
double min_eigenvalue(const DensityMatrix& rho);

}  // namespace quditsim
