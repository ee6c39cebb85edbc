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

#include "quditsim/algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quditsim {

namespace {

// Desk-scale guard: total Hilbert dimension is capped at 2^20.
constexpr std::size_t kMaxDim = 1u << 20;

}  // namespace

QuditSystem::QuditSystem(int local_dim, int sites) : d(local_dim), n(sites) {
  if (d < 2) throw std::invalid_argument("QuditSystem: local dimension must be >= 2");
  if (n < 1) throw std::invalid_argument("QuditSystem: site count must be >= 1");
  dim_ = 1;
  for (int i = 0; i < n; ++i) {
    if (dim_ > kMaxDim / static_cast<std::size_t>(d))
      throw std::invalid_argument("QuditSystem: d^n exceeds the 2^20 desk-scale cap");
    dim_ *= static_cast<std::size_t>(d);
  }
}

std::size_t QuditSystem::stride(int site) const {
  check_site(site);
  std::size_t s = 1;
  for (int i = 0; i < n - site; ++i) s *= static_cast<std::size_t>(d);
  return s;
}

int QuditSystem::digit(std::size_t index, int site) const {
  return static_cast<int>((index / stride(site)) % static_cast<std::size_t>(d));
}

void QuditSystem::check_site(int site) const {
  if (site < 1 || site > n)
    throw std::out_of_range("site " + std::to_string(site) + " outside 1.." + std::to_string(n));
}

cxd omega(int d, long long k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / d;
  return {std::cos(angle), std::sin(angle)};
}

Operator gen_z(int d) {
  if (d < 2) throw std::invalid_argument("gen_z: d must be >= 2");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = omega(d, k);
  return {std::move(m)};
}

Operator gen_x(int d) {
  if (d < 2) throw std::invalid_argument("gen_x: d must be >= 2");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m((k - 1 + d) % d, k) = 1.0;
  return {std::move(m)};
}

Operator fourier(int d) {
  if (d < 2) throw std::invalid_argument("fourier: d must be >= 2");
  Matrix m(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j, k) = norm * omega(d, static_cast<long long>(j) * k);
  return {std::move(m)};
}

Operator z_alpha(int d, std::span<const double> alphas) {
  if (d < 2) throw std::invalid_argument("z_alpha: d must be >= 2");
  if (static_cast<int>(alphas.size()) != d)
    throw std::invalid_argument("z_alpha: need exactly d angles, got " +
                                std::to_string(alphas.size()));
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = cxd{std::cos(alphas[k]), std::sin(alphas[k])};
  return {std::move(m)};
}

Operator identity_op(Eigen::Index dim) { return {Matrix::Identity(dim, dim)}; }

Operator dagger(const Operator& op) { return {op.mat.adjoint()}; }

Operator tensor(const Operator& a, const Operator& b) {
  Matrix m(a.dim() * b.dim(), a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < a.dim(); ++j)
      m.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a.mat(i, j) * b.mat;
  return {std::move(m)};
}

PureState tensor(const PureState& a, const PureState& b) {
  if (a.system.d != b.system.d)
    throw std::invalid_argument("tensor: mixed local dimensions");
  QuditSystem sys(a.system.d, a.system.n + b.system.n);
  Vector v(sys.dim());
  for (Eigen::Index i = 0; i < a.amp.size(); ++i)
    v.segment(i * b.amp.size(), b.amp.size()) = a.amp(i) * b.amp;
  return {sys, std::move(v)};
}

PureState basis_state(const QuditSystem& system, std::size_t index) {
  if (index >= system.dim()) throw std::out_of_range("basis_state: index out of range");
  Vector v = Vector::Zero(system.dim());
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {system, std::move(v)};
}

PureState plus_state(int d) { return fourier_basis_state(d, 0); }

PureState fourier_basis_state(int d, int j) {
  QuditSystem sys(d, 1);
  Vector v(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) v(k) = norm * omega(d, static_cast<long long>(j) * k);
  return {sys, std::move(v)};
}

DensityMatrix to_density(const PureState& psi) {
  return {psi.system, psi.amp * psi.amp.adjoint()};
}

Operator embed_at_site(const Operator& local, const QuditSystem& system, int site) {
  system.check_site(site);
  if (local.dim() != system.d)
    throw std::invalid_argument("embed_at_site: operator dimension does not match d");
  std::size_t pre = 1, post = 1;
  for (int i = 1; i < site; ++i) pre *= static_cast<std::size_t>(system.d);
  for (int i = site + 1; i <= system.n; ++i) post *= static_cast<std::size_t>(system.d);
  Operator out = identity_op(static_cast<Eigen::Index>(pre));
  out = tensor(out, local);
  out = tensor(out, identity_op(static_cast<Eigen::Index>(post)));
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep_sites) {
  const QuditSystem& sys = state.system;
  if (keep_sites.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  for (std::size_t i = 0; i < keep_sites.size(); ++i) {
    sys.check_site(keep_sites[i]);
    if (i > 0 && keep_sites[i] <= keep_sites[i - 1])
      throw std::invalid_argument("partial_trace: keep sites must be strictly ascending");
  }

  std::vector<int> traced;
  {
    std::size_t k = 0;
    for (int s = 1; s <= sys.n; ++s) {
      if (k < keep_sites.size() && keep_sites[k] == s)
        ++k;
      else
        traced.push_back(s);
    }
  }

  QuditSystem out_sys(sys.d, static_cast<int>(keep_sites.size()));
  std::size_t traced_dim = 1;
  for (std::size_t i = 0; i < traced.size(); ++i) traced_dim *= static_cast<std::size_t>(sys.d);

  auto full_index = [&](std::size_t keep_idx, std::size_t traced_idx) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < keep_sites.size(); ++i) {
      const int digit = static_cast<int>(
          (keep_idx / out_sys.stride(static_cast<int>(i) + 1)) % static_cast<std::size_t>(sys.d));
      idx += static_cast<std::size_t>(digit) * sys.stride(keep_sites[i]);
    }
    std::size_t rem = traced_idx;
    for (std::size_t i = traced.size(); i-- > 0;) {
      idx += (rem % static_cast<std::size_t>(sys.d)) * sys.stride(traced[i]);
      rem /= static_cast<std::size_t>(sys.d);
    }
    return idx;
  };

  Matrix out = Matrix::Zero(out_sys.dim(), out_sys.dim());
  for (std::size_t r = 0; r < out_sys.dim(); ++r)
    for (std::size_t c = 0; c < out_sys.dim(); ++c) {
      cxd acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t)
        acc += state.rho(static_cast<Eigen::Index>(full_index(r, t)),
                         static_cast<Eigen::Index>(full_index(c, t)));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  return {out_sys, std::move(out)};
}

PureState apply(const Operator& op, const PureState& psi) {
  if (op.dim() != psi.amp.size())
    throw std::invalid_argument("apply: operator/state dimension mismatch");
  return {psi.system, op.mat * psi.amp};
}

DensityMatrix apply(const Operator& op, const DensityMatrix& rho) {
  if (op.dim() != rho.rho.rows())
    throw std::invalid_argument("apply: operator/state dimension mismatch");
  return {rho.system, op.mat * rho.rho * op.mat.adjoint()};
}

Vector apply_local(const Vector& v, const QuditSystem& system, int site, const Matrix& m) {
  system.check_site(site);
  if (m.rows() != system.d || m.cols() != system.d)
    throw std::invalid_argument("apply_local: operator is not d x d");
  const std::size_t s = system.stride(site);
  const std::size_t d = static_cast<std::size_t>(system.d);
  const std::size_t blocks = static_cast<std::size_t>(v.size()) / (s * d);
  Vector out(v.size());
  for (std::size_t a = 0; a < blocks; ++a) {
    const std::size_t base = a * s * d;
    for (std::size_t b = 0; b < s; ++b) {
      for (std::size_t j = 0; j < d; ++j) {
        cxd acc = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          acc += m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) *
                 v(static_cast<Eigen::Index>(base + k * s + b));
        out(static_cast<Eigen::Index>(base + j * s + b)) = acc;
      }
    }
  }
  return out;
}

Vector apply_two_site(const Vector& v, const QuditSystem& system, int site_a, int site_b,
                      const Matrix& m) {
  system.check_site(site_a);
  system.check_site(site_b);
  if (site_a == site_b) throw std::invalid_argument("apply_two_site: sites must differ");
  const std::size_t d = static_cast<std::size_t>(system.d);
  if (m.rows() != static_cast<Eigen::Index>(d * d) || m.cols() != m.rows())
    throw std::invalid_argument("apply_two_site: operator is not d^2 x d^2");
  const std::size_t sa = system.stride(site_a);
  const std::size_t sb = system.stride(site_b);
  Vector out = Vector::Zero(v.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    const std::size_t ka = (i / sa) % d;
    const std::size_t kb = (i / sb) % d;
    const std::size_t base = i - ka * sa - kb * sb;
    const std::size_t col = ka * d + kb;
    if (std::norm(v(static_cast<Eigen::Index>(i))) == 0.0) continue;
    for (std::size_t ja = 0; ja < d; ++ja)
      for (std::size_t jb = 0; jb < d; ++jb) {
        const cxd coef = m(static_cast<Eigen::Index>(ja * d + jb), static_cast<Eigen::Index>(col));
        if (coef == cxd{0.0, 0.0}) continue;
        out(static_cast<Eigen::Index>(base + ja * sa + jb * sb)) +=
            coef * v(static_cast<Eigen::Index>(i));
      }
  }
  return out;
}

Matrix conjugate_site(const Matrix& rho, const QuditSystem& system, int site, const Matrix& k) {
  system.check_site(site);
  if (k.rows() != system.d || k.cols() != system.d)
    throw std::invalid_argument("conjugate_site: operator is not d x d");
  const std::size_t s = system.stride(site);
  const std::size_t d = static_cast<std::size_t>(system.d);
  const std::size_t dim = static_cast<std::size_t>(rho.rows());
  const std::size_t blocks = dim / (s * d);

  // rows: K rho
  Matrix tmp(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < blocks; ++a) {
    const std::size_t base = a * s * d;
    for (std::size_t b = 0; b < s; ++b)
      for (std::size_t j = 0; j < d; ++j) {
        Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(rho.cols());
        for (std::size_t kk = 0; kk < d; ++kk)
          acc += k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(kk)) *
                 rho.row(static_cast<Eigen::Index>(base + kk * s + b));
        tmp.row(static_cast<Eigen::Index>(base + j * s + b)) = acc;
      }
  }
  // columns: (K rho) K^dagger
  Matrix out(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < blocks; ++a) {
    const std::size_t base = a * s * d;
    for (std::size_t b = 0; b < s; ++b)
      for (std::size_t j = 0; j < d; ++j) {
        Vector acc = Vector::Zero(rho.rows());
        for (std::size_t kk = 0; kk < d; ++kk)
          acc += std::conj(k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(kk))) *
                 tmp.col(static_cast<Eigen::Index>(base + kk * s + b));
        out.col(static_cast<Eigen::Index>(base + j * s + b)) = acc;
      }
  }
  return out;
}

double norm_error(const PureState& psi) { return std::abs(psi.amp.norm() - 1.0); }

double hermiticity_error(const DensityMatrix& rho) {
  return (rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff();
}

double trace_error(const DensityMatrix& rho) { return std::abs(rho.rho.trace() - cxd{1.0, 0.0}); }

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace quditsim
