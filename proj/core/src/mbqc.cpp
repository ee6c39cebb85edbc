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

#include "quditsim/mbqc.hpp"

#include "quditsim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace quditsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int mod_d(int value, int d) {
  const int r = value % d;
  return r < 0 ? r + d : r;
}

Matrix matrix_power(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

/// Completes `columns` (orthonormal) to a full unitary with Householder QR.
Matrix complete_unitary(const Matrix& columns) {
  const Eigen::Index dim = columns.rows();
  Eigen::HouseholderQR<Matrix> qr(columns);
  Matrix q = qr.householderQ();
  // QR phases are arbitrary; re-anchor the leading columns to the input.
  for (Eigen::Index c = 0; c < columns.cols(); ++c) q.col(c) = columns.col(c);
  // re-orthogonalize the completion against the anchored block
  for (Eigen::Index c = columns.cols(); c < dim; ++c) {
    Vector v = q.col(c);
    for (Eigen::Index p = 0; p < c; ++p) v -= q.col(p).dot(v) * q.col(p);
    q.col(c) = v / v.norm();
  }
  return q;
}

}  // namespace

Vector MeasurementBasis::vector(int outcome) const {
  if (outcome < 0 || outcome >= d) throw std::out_of_range("MeasurementBasis: bad outcome");
  if (static_cast<int>(alphas.size()) != d)
    throw std::invalid_argument("MeasurementBasis: need exactly d angles");
  Vector v(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k)
    v(k) = norm * cxd{std::cos(alphas[static_cast<std::size_t>(k)]), std::sin(alphas[static_cast<std::size_t>(k)])} *
           omega(d, static_cast<long long>(outcome) * k);
  return v;
}

Matrix MeasurementBasis::matrix() const {
  Matrix m(d, d);
  for (int s = 0; s < d; ++s) m.col(s) = vector(s);
  return m;
}

double MeasurementBasis::orthonormality_error() const {
  const Matrix m = matrix();
  return (m.adjoint() * m - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

MeasureResult measure_site(const DensityMatrix& rho, int site, const MeasurementBasis& basis,
                           int outcome) {
  const QuditSystem& sys = rho.system;
  sys.check_site(site);
  if (basis.d != sys.d) throw std::invalid_argument("measure_site: basis dimension mismatch");
  if (sys.n < 2) throw std::invalid_argument("measure_site: nothing would remain");

  const Vector b = basis.vector(outcome);
  const std::size_t stride = sys.stride(site);
  const QuditSystem rest(sys.d, sys.n - 1);

  // base index of each remaining-register index with digit 0 at `site`
  std::vector<std::size_t> base(rest.dim());
  for (std::size_t r = 0; r < rest.dim(); ++r) {
    std::size_t idx = 0;
    int orig = 1;
    for (int s = 1; s <= rest.n; ++s, ++orig) {
      if (orig == site) ++orig;
      idx += static_cast<std::size_t>(rest.digit(r, s)) * sys.stride(orig);
    }
    base[r] = idx;
  }

  Matrix reduced = Matrix::Zero(rest.dim(), rest.dim());
  for (std::size_t r = 0; r < rest.dim(); ++r)
    for (std::size_t c = 0; c < rest.dim(); ++c) {
      cxd acc = 0.0;
      for (int k = 0; k < sys.d; ++k)
        for (int k2 = 0; k2 < sys.d; ++k2)
          acc += std::conj(b(k)) * b(k2) *
                 rho.rho(static_cast<Eigen::Index>(base[r] + static_cast<std::size_t>(k) * stride),
                         static_cast<Eigen::Index>(base[c] + static_cast<std::size_t>(k2) * stride));
      reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }

  MeasureResult result;
  result.probability = std::real(reduced.trace());
  result.zero_probability = result.probability < kZeroProbability;
  if (!result.zero_probability) reduced /= result.probability;
  result.state = DensityMatrix{rest, std::move(reduced)};
  return result;
}

ProtocolResult bbb1(const PureState& logical, std::span<const double> alphas, int outcome,
                    const std::optional<ChannelSpec>& noise) {
  const int d = logical.system.d;
  PureState cluster = build_cluster(ClusterGraph::linear(2), d, {{1, logical}});
  DensityMatrix rho = to_density(cluster);
  if (noise) rho = apply_all(rho, *noise);
  MeasurementBasis basis{d, {alphas.begin(), alphas.end()}};
  MeasureResult m = measure_site(rho, 1, basis, outcome);
  return {std::move(m.state), m.probability, m.zero_probability};
}

ProtocolResult bbb1(const DensityMatrix& logical, std::span<const double> alphas, int outcome,
                    const std::optional<ChannelSpec>& noise) {
  if (logical.system.n != 1) throw std::invalid_argument("bbb1: logical input must be one qudit");
  const int d = logical.system.d;
  const QuditSystem joint(d, 2);

  // (logical (x) |+><+|) conjugated by the edge gate, built directly from
  // the diagonal phases
  Matrix rho = Matrix::Zero(joint.dim(), joint.dim());
  for (std::size_t r = 0; r < joint.dim(); ++r)
    for (std::size_t c = 0; c < joint.dim(); ++c) {
      const long long rk = joint.digit(r, 1), rl = joint.digit(r, 2);
      const long long ck = joint.digit(c, 1), cl = joint.digit(c, 2);
      rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          logical.rho(static_cast<Eigen::Index>(rk), static_cast<Eigen::Index>(ck)) *
          omega(d, rk * rl - ck * cl) / static_cast<double>(d);
    }

  DensityMatrix state{joint, std::move(rho)};
  if (noise) state = apply_all(state, *noise);
  MeasurementBasis basis{d, {alphas.begin(), alphas.end()}};
  MeasureResult m = measure_site(state, 1, basis, outcome);
  return {std::move(m.state), m.probability, m.zero_probability};
}

ProtocolResult transfer(int n, int d, const PureState& input,
                        const std::optional<ChannelSpec>& noise) {
  if (n < 1) throw std::invalid_argument("transfer: n must be >= 1");
  if (input.system.d != d || input.system.n != 1)
    throw std::invalid_argument("transfer: input must be a single qudit of dimension d");

  PureState cluster = build_cluster(ClusterGraph::linear(n), d, {{1, input}});
  DensityMatrix rho = to_density(cluster);
  if (noise) rho = apply_all(rho, *noise);

  ProtocolResult result{std::move(rho), 1.0, false};
  const MeasurementBasis basis{d, std::vector<double>(static_cast<std::size_t>(d), 0.0)};
  for (int i = 0; i < n - 1; ++i) {
    MeasureResult m = measure_site(result.state, 1, basis, 0);
    result.probability *= m.probability;
    result.zero_probability = result.zero_probability || m.zero_probability;
    result.state = std::move(m.state);
    if (result.zero_probability) break;
  }
  return result;
}

DensityMatrix bbb2(const PureState& q1, const PureState& q2,
                   const std::optional<ChannelSpec>& noise) {
  if (q1.system.d != q2.system.d)
    throw std::invalid_argument("bbb2: input dimensions differ");
  PureState cluster = build_cluster(ClusterGraph::linear(2), q1.system.d, {{1, q1}, {2, q2}});
  DensityMatrix rho = to_density(cluster);
  if (noise) rho = apply_all(rho, *noise);
  return rho;
}

ProtocolResult bbb3(const PureState& q1, const PureState& q3, std::span<const double> alphas,
                    int outcome, const std::optional<ChannelSpec>& noise) {
  if (q1.system.d != q3.system.d)
    throw std::invalid_argument("bbb3: input dimensions differ");
  const int d = q1.system.d;
  PureState cluster = build_cluster(ClusterGraph::linear(3), d, {{1, q1}, {3, q3}});
  DensityMatrix rho = to_density(cluster);
  if (noise) rho = apply_all(rho, *noise);
  MeasurementBasis basis{d, {alphas.begin(), alphas.end()}};
  MeasureResult m = measure_site(rho, 2, basis, outcome);
  return {std::move(m.state), m.probability, m.zero_probability};
}

Operator t13(int d, std::span<const double> alphas, int s2) {
  if (static_cast<int>(alphas.size()) != d) throw std::invalid_argument("t13: need d angles");
  QuditSystem sys(d, 2);
  Matrix m = Matrix::Zero(sys.dim(), sys.dim());
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    const int k = sys.digit(i, 1);
    const int l = sys.digit(i, 2);
    cxd sum = 0.0;
    for (int j = 0; j < d; ++j) {
      const double a = alphas[static_cast<std::size_t>(j)];
      sum += omega(d, static_cast<long long>(j) * (k + l - s2)) * cxd{std::cos(a), -std::sin(a)};
    }
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = norm * sum;
  }
  return {std::move(m)};
}

Operator u13(int d, std::span<const double> alphas) {
  if (static_cast<int>(alphas.size()) != d) throw std::invalid_argument("u13: need d angles");
  QuditSystem sys(d, 2);
  Matrix m = Matrix::Zero(sys.dim(), sys.dim());
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    const int k = sys.digit(i, 1);
    const int l = sys.digit(i, 2);
    const double a = alphas[static_cast<std::size_t>(mod_d(-(k + l), d))];
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = cxd{std::cos(a), std::sin(a)};
  }
  return {std::move(m)};
}

UnitarityReport unitarity_condition(int d, std::span<const double> alphas, double tol) {
  if (static_cast<int>(alphas.size()) != d)
    throw std::invalid_argument("unitarity_condition: need d angles");
  UnitarityReport report;
  report.holds = true;
  report.phase_holds = true;
  for (int m = 0; m < d; ++m) {
    cxd sum = 0.0;
    for (int j = 0; j < d; ++j) {
      const double a = alphas[static_cast<std::size_t>(j)];
      sum += omega(d, static_cast<long long>(j) * m) * cxd{std::cos(a), -std::sin(a)};
    }
    const double residual = std::abs(std::norm(sum) - static_cast<double>(d));
    report.residuals.push_back(residual);
    report.holds = report.holds && residual <= tol;

    const double target_angle = alphas[static_cast<std::size_t>(mod_d(-m, d))];
    const cxd target{std::cos(target_angle), std::sin(target_angle)};
    const double phase_residual = std::abs(sum / static_cast<double>(d) - target);
    report.phase_residuals.push_back(phase_residual);
    report.phase_holds = report.phase_holds && phase_residual <= tol;
  }
  return report;
}

std::vector<double> entangling_angles(int d) {
  if (d < 2) throw std::invalid_argument("entangling_angles: d must be >= 2");
  std::vector<double> alphas(static_cast<std::size_t>(d));
  const double scale = (d % 2 == 0) ? std::numbers::pi / d : 2.0 * std::numbers::pi / d;
  for (int j = 0; j < d; ++j) {
    double a = std::fmod(-scale * j * j, kTwoPi);
    if (a < 0) a += kTwoPi;
    alphas[static_cast<std::size_t>(j)] = a;
  }
  return alphas;
}

Operator e12_gate() {
  QuditSystem sys(3, 2);
  Matrix m = Matrix::Identity(sys.dim(), sys.dim());
  m(4, 4) = omega(3);  // |1,1>
  return {std::move(m)};
}

// ---------------------------------------------------------------------------
// Encodings
// ---------------------------------------------------------------------------

EncodingSpec EncodingSpec::named(char letter, int d, bool pair) {
  EncodingSpec spec;
  spec.pair = pair;
  spec.d = pair ? 4 : d;
  switch (letter) {
    case 'G': spec.kind = Encoding::Ground; break;
    case 'T': spec.kind = Encoding::Top; break;
    case 'L': spec.kind = Encoding::Lopsided; break;
    case 'O': spec.kind = Encoding::Outside; break;
    case 'M': spec.kind = Encoding::Middle; break;
    case 'E': spec.kind = Encoding::Equal; break;
    default:
      throw std::invalid_argument(std::string("EncodingSpec: unknown encoding '") + letter + "'");
  }
  spec.validate();
  return spec;
}

EncodingSpec EncodingSpec::general(Matrix lambda, Eigen::VectorXcd r_phases) {
  EncodingSpec spec;
  spec.kind = Encoding::General;
  spec.d = static_cast<int>(lambda.rows());
  spec.lambda = std::move(lambda);
  spec.r_phases = std::move(r_phases);
  spec.validate();
  return spec;
}

void EncodingSpec::validate() const {
  if (pair && d != 4) throw std::invalid_argument("EncodingSpec: pair encodings are 4-dimensional");
  switch (kind) {
    case Encoding::Ground:
      if (pair || d < 2) throw std::invalid_argument("EncodingSpec: G needs a single qudit, d >= 2");
      break;
    case Encoding::Top:
      if (pair || d < 3) throw std::invalid_argument("EncodingSpec: T needs a single qudit, d >= 3");
      break;
    case Encoding::Lopsided:
      if (!pair && d < 3) throw std::invalid_argument("EncodingSpec: L needs d >= 3 or a pair");
      break;
    case Encoding::Outside:
    case Encoding::Middle:
      if (!pair) throw std::invalid_argument("EncodingSpec: O and M exist only for the qubit pair");
      break;
    case Encoding::Equal:
      if (!pair && d < 3) throw std::invalid_argument("EncodingSpec: E needs d >= 3 or a pair");
      break;
    case Encoding::General: {
      if (pair) throw std::invalid_argument("EncodingSpec: general map is single-qudit");
      if (lambda.rows() != d || lambda.cols() != d)
        throw std::invalid_argument("EncodingSpec: Lambda must be d x d");
      const double err =
          (lambda.adjoint() * lambda - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
      if (err > 1e-12) throw std::invalid_argument("EncodingSpec: Lambda is not unitary");
      if (r_phases.size() != d - 2)
        throw std::invalid_argument("EncodingSpec: R block needs d-2 phases");
      break;
    }
  }
}

PureState encode(const EncodingSpec& spec, cxd a, cxd b) {
  spec.validate();
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10)
    throw std::invalid_argument("encode: |a|^2 + |b|^2 must be 1");
  const int dim = spec.physical_dim();
  Vector v = Vector::Zero(dim);
  switch (spec.kind) {
    case Encoding::Ground:
      v(0) = a;
      v(1) = b;
      break;
    case Encoding::Top:
      v(dim - 2) = a;
      v(dim - 1) = b;
      break;
    case Encoding::Lopsided: {
      v(0) = a;
      const double norm = 1.0 / std::sqrt(static_cast<double>(dim - 1));
      for (int j = 1; j < dim; ++j) v(j) = b * norm;
      break;
    }
    case Encoding::Outside:
      v(0) = a;
      v(3) = b;
      break;
    case Encoding::Middle:
      v(1) = a;
      v(2) = b;
      break;
    case Encoding::Equal: {
      const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
      for (int n = 0; n < dim; ++n) v(n) = norm * (a + omega(dim, n) * b);
      break;
    }
    case Encoding::General: {
      Vector logical = Vector::Zero(dim);
      logical(0) = a;
      logical(1) = b;
      v = spec.lambda * logical;
      break;
    }
  }
  const QuditSystem sys = spec.pair ? QuditSystem(2, 2) : QuditSystem(spec.d, 1);
  return {sys, std::move(v)};
}

Operator embedded_operation(const EncodingSpec& spec, const Matrix& chi_logical) {
  spec.validate();
  if (chi_logical.rows() != 2 || chi_logical.cols() != 2)
    throw std::invalid_argument("embedded_operation: logical block must be 2 x 2");
  const int dim = spec.physical_dim();

  Matrix lambda;
  Eigen::VectorXcd phases;
  if (spec.kind == Encoding::General) {
    lambda = spec.lambda;
    phases = spec.r_phases;
  } else {
    Matrix columns(dim, 2);
    columns.col(0) = encode(spec, 1.0, 0.0).amp;
    columns.col(1) = encode(spec, 0.0, 1.0).amp;
    lambda = complete_unitary(columns);
    phases = Eigen::VectorXcd::Ones(dim - 2);
  }

  Matrix block = Matrix::Zero(dim, dim);
  block.topLeftCorner(2, 2) = chi_logical;
  for (int i = 2; i < dim; ++i) block(i, i) = phases(i - 2);
  return {lambda * block * lambda.adjoint()};
}

EncodedTransfer encoded_transfer(int n, const EncodingSpec& spec, cxd a, cxd b,
                                 const std::optional<ChannelSpec>& noise) {
  const PureState psi = encode(spec, a, b);
  EncodedTransfer out{DensityMatrix{psi.system, Matrix()}, psi, 1.0, 0.0};

  if (spec.pair) {
    const Operator f = fourier(2);
    const Matrix step = tensor(f, f).mat;
    Matrix prop = Matrix::Identity(4, 4);
    for (int i = 1; i < n; ++i) prop = step * prop;
    out.ideal = PureState{psi.system, prop * psi.amp};
    ProtocolResult result = pair_transfer(n, psi, noise);
    out.probability = result.probability;
    out.state = std::move(result.state);
  } else {
    const Matrix prop = matrix_power(fourier(spec.d).mat, n - 1);
    out.ideal = PureState{psi.system, prop * psi.amp};
    ProtocolResult result = transfer(n, spec.d, psi, noise);
    out.probability = result.probability;
    out.state = std::move(result.state);
  }
  out.fidelity_value = fidelity(out.ideal, out.state);
  return out;
}

ProtocolResult pair_transfer(int n, const PureState& pair_input,
                             const std::optional<ChannelSpec>& noise) {
  if (n < 1) throw std::invalid_argument("pair_transfer: n must be >= 1");
  if (pair_input.system.d != 2 || pair_input.system.n != 2)
    throw std::invalid_argument("pair_transfer: input must be two qubits");

  const QuditSystem sys(2, 2 * n);
  // product of the input pair on the chain heads (sites 1 and n+1) with |+>
  // everywhere else, then the edge gates along both chains
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
    amp(static_cast<Eigen::Index>(i)) *= omega(2, exponent);
  }

  DensityMatrix rho{sys, amp * amp.adjoint()};
  if (noise) rho = apply_all(rho, *noise);

  ProtocolResult result{std::move(rho), 1.0, false};
  const MeasurementBasis basis{2, {0.0, 0.0}};
  // chain A occupies the head of the register: measure its first n-1 sites,
  // then chain B starts at (current) site 2
  for (int i = 0; i < n - 1 && !result.zero_probability; ++i) {
    MeasureResult m = measure_site(result.state, 1, basis, 0);
    result.probability *= m.probability;
    result.zero_probability = m.zero_probability;
    result.state = std::move(m.state);
  }
  for (int i = 0; i < n - 1 && !result.zero_probability; ++i) {
    MeasureResult m = measure_site(result.state, 2, basis, 0);
    result.probability *= m.probability;
    result.zero_probability = m.zero_probability;
    result.state = std::move(m.state);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Byproduct bookkeeping
// ---------------------------------------------------------------------------

OutcomeRecord OutcomeRecord::empty(int d, int qudits) {
  OutcomeRecord record;
  record.d = d;
  record.x.assign(static_cast<std::size_t>(qudits), 0);
  record.z.assign(static_cast<std::size_t>(qudits), 0);
  return record;
}

PushResult byproduct_propagate(const OutcomeRecord& record, std::span<const MbqcGate> gates) {
  PushResult out{record, {gates.begin(), gates.end()}};
  const int d = record.d;
  auto check = [&](int site) {
    if (site < 1 || site > static_cast<int>(record.x.size()))
      throw std::invalid_argument("byproduct_propagate: gate site outside the record");
  };
  for (MbqcGate& gate : out.gates) {
    switch (gate.kind) {
      case MbqcGateKind::Fourier: {
        check(gate.site);
        auto& x = out.record.x[static_cast<std::size_t>(gate.site - 1)];
        auto& z = out.record.z[static_cast<std::size_t>(gate.site - 1)];
        const int new_x = z;
        const int new_z = mod_d(-x, d);
        x = new_x;
        z = new_z;
        break;
      }
      case MbqcGateKind::PhaseRotation: {
        check(gate.site);
        if (static_cast<int>(gate.alphas.size()) != d)
          throw std::invalid_argument("byproduct_propagate: rotation needs d angles");
        const int x = out.record.x[static_cast<std::size_t>(gate.site - 1)];
        std::vector<double> shifted(gate.alphas.size());
        for (int j = 0; j < d; ++j)
          shifted[static_cast<std::size_t>(j)] = gate.alphas[static_cast<std::size_t>(mod_d(j - x, d))];
        gate.alphas = std::move(shifted);
        break;
      }
      case MbqcGateKind::Entangle: {
        check(gate.site);
        check(gate.site2);
        if (gate.site == gate.site2)
          throw std::invalid_argument("byproduct_propagate: entangling gate needs two sites");
        auto& z1 = out.record.z[static_cast<std::size_t>(gate.site - 1)];
        auto& z2 = out.record.z[static_cast<std::size_t>(gate.site2 - 1)];
        z1 = mod_d(z1 - out.record.x[static_cast<std::size_t>(gate.site2 - 1)], d);
        z2 = mod_d(z2 - out.record.x[static_cast<std::size_t>(gate.site - 1)], d);
        break;
      }
    }
  }
  return out;
}

Operator byproduct_operator(const OutcomeRecord& record, const QuditSystem& system) {
  if (system.d != record.d || system.n != static_cast<int>(record.x.size()))
    throw std::invalid_argument("byproduct_operator: record/system mismatch");
  const Matrix x = gen_x(system.d).mat;
  const Matrix z = gen_z(system.d).mat;
  Operator out = identity_op(1);
  for (int q = 0; q < system.n; ++q) {
    const Matrix local = matrix_power(x, record.x[static_cast<std::size_t>(q)]) *
                         matrix_power(z, record.z[static_cast<std::size_t>(q)]);
    out = tensor(out, Operator{local});
  }
  return out;
}

}  // namespace quditsim
