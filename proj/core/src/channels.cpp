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

#include "quditsim/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace quditsim {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out *= static_cast<double>(n - k + i) / i;
  return out;
}

}  // namespace

double ChannelSpec::gamma() const { return std::exp(-rate * time); }

double ChannelSpec::tau() const { return rate * time; }

void ChannelSpec::validate() const {
  if (!(rate > 0.0)) throw std::invalid_argument("ChannelSpec: rate must be > 0");
  if (!(time >= 0.0)) throw std::invalid_argument("ChannelSpec: time must be >= 0");
}

double KrausSet::completeness_residual() const {
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& k : ops) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

KrausSet ad_kraus(int d, double gamma) {
  if (d < 2) throw std::invalid_argument("ad_kraus: d must be >= 2");
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("ad_kraus: gamma must lie in (0, 1]");
  KrausSet set{d, {}};
  for (int mu = 0; mu < d; ++mu) {
    Matrix k = Matrix::Zero(d, d);
    for (int n = mu; n < d; ++n) {
      const double w =
          binomial(n, mu) * std::pow(gamma, n - mu) * std::pow(1.0 - gamma, mu);
      k(n - mu, n) = std::sqrt(w);
    }
    set.ops.push_back(std::move(k));
  }
  return set;
}

KrausSet pd_kraus(int d, double tau) {
  if (d < 2) throw std::invalid_argument("pd_kraus: d must be >= 2");
  if (!(tau >= 0.0)) throw std::invalid_argument("pd_kraus: tau must be >= 0");
  Eigen::MatrixXd m(d, d);
  for (int n = 0; n < d; ++n)
    for (int c = 0; c < d; ++c)
      m(n, c) = std::exp(-0.5 * tau * static_cast<double>((n - c) * (n - c)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);

  KrausSet set{d, {}};
  for (int i = 0; i < d; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= 1e-30) continue;  // numerically vanished mode of the Gaussian kernel
    Matrix k = Matrix::Zero(d, d);
    const double scale = std::sqrt(lambda);
    for (int n = 0; n < d; ++n) k(n, n) = scale * es.eigenvectors()(n, i);
    set.ops.push_back(std::move(k));
  }
  return set;
}

KrausSet kraus_set(const ChannelSpec& spec, int d) {
  spec.validate();
  if (spec.kind == ChannelKind::AmplitudeDamping) return ad_kraus(d, spec.gamma());
  return pd_kraus(d, spec.tau());
}

DensityMatrix apply_single(const DensityMatrix& rho, int site, const KrausSet& kraus) {
  rho.system.check_site(site);
  if (kraus.d != rho.system.d)
    throw std::invalid_argument("apply_single: Kraus dimension does not match the system");
  Matrix out = Matrix::Zero(rho.rho.rows(), rho.rho.cols());
  for (const Matrix& k : kraus.ops) out += conjugate_site(rho.rho, rho.system, site, k);
  return {rho.system, std::move(out)};
}

DensityMatrix apply_all(const DensityMatrix& rho, const ChannelSpec& spec) {
  const KrausSet kraus = kraus_set(spec, rho.system.d);
  DensityMatrix out = rho;
  for (int site = 1; site <= rho.system.n; ++site) out = apply_single(out, site, kraus);
  return out;
}

DensityMatrix pd_closed_form(const DensityMatrix& rho, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("pd_closed_form: tau must be >= 0");
  const QuditSystem& sys = rho.system;
  Matrix out = rho.rho;
  for (std::size_t r = 0; r < sys.dim(); ++r)
    for (std::size_t c = 0; c < sys.dim(); ++c) {
      double exponent = 0.0;
      for (int s = 1; s <= sys.n; ++s) {
        const double diff = sys.digit(r, s) - sys.digit(c, s);
        exponent += diff * diff;
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *=
          std::exp(-0.5 * tau * exponent);
    }
  return {sys, std::move(out)};
}

DensityMatrix lindblad_ad_reference(const DensityMatrix& rho0, double rate, double time,
                                    double max_step) {
  if (rho0.system.n != 1)
    throw std::invalid_argument("lindblad_ad_reference: single qudit only");
  if (!(rate > 0.0) || !(time >= 0.0) || !(max_step > 0.0))
    throw std::invalid_argument("lindblad_ad_reference: bad rate/time/step");
  const int d = rho0.system.d;

  Matrix a = Matrix::Zero(d, d);
  for (int k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix num = a.adjoint() * a;

  auto generator = [&](const Matrix& r) -> Matrix {
    return rate * (a * r * a.adjoint() - 0.5 * (num * r + r * num));
  };

  const double total = rate * time;         // dimensionless evolution span
  const long long steps = std::max<long long>(1, static_cast<long long>(std::ceil(total / max_step)));
  const double h = time / static_cast<double>(steps);

  Matrix r = rho0.rho;
  for (long long i = 0; i < steps; ++i) {
    const Matrix k1 = generator(r);
    const Matrix k2 = generator(r + 0.5 * h * k1);
    const Matrix k3 = generator(r + 0.5 * h * k2);
    const Matrix k4 = generator(r + h * k3);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  DensityMatrix out{rho0.system, std::move(r)};
  if (trace_error(out) > 1e-8 || hermiticity_error(out) > 1e-8)
    throw std::runtime_error("lindblad_ad_reference: integration drifted; reduce max_step");
  return out;
}

Matrix adjoint_apply(const KrausSet& kraus, const Matrix& observable) {
  if (observable.rows() != kraus.d || observable.cols() != kraus.d)
    throw std::invalid_argument("adjoint_apply: observable dimension mismatch");
  Matrix out = Matrix::Zero(kraus.d, kraus.d);
  for (const Matrix& k : kraus.ops) out += k.adjoint() * observable * k;
  return out;
}

}  // namespace quditsim
