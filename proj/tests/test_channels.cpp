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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "quditsim/channels.hpp"
#include "quditsim/metrics.hpp"
#include "support/test_util.hpp"

using namespace quditsim;
using testutil::max_abs_diff;

namespace {

/// Truncated-basis members of the unbounded dephasing family,
/// P_mu = sum_n e^{-n^2 tau/2} [(n^2 tau)^mu / mu!]^{1/2} |n><n|.
/// Serves as an independent oracle for the finite construction.
Matrix pd_raw_member(int d, double tau, int mu) {
  Matrix p = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    double log_w = -0.5 * n * n * tau;
    if (mu > 0) {
      if (n == 0) continue;  // (n^2 tau)^mu vanishes
      log_w += 0.5 * (mu * std::log(static_cast<double>(n) * n * tau) - std::lgamma(mu + 1.0));
    }
    p(n, n) = std::exp(log_w);
  }
  return p;
}

DensityMatrix pd_raw_apply(const DensityMatrix& rho, double tau, int mu_max) {
  Matrix out = Matrix::Zero(rho.rho.rows(), rho.rho.cols());
  for (int mu = 0; mu <= mu_max; ++mu) {
    const Matrix p = pd_raw_member(rho.system.d, tau, mu);
    out += p * rho.rho * p.adjoint();
  }
  return {rho.system, std::move(out)};
}

}  // namespace

TEST_CASE("channel spec parameters") {
  const ChannelSpec ad{ChannelKind::AmplitudeDamping, 2.0, 0.5};
  CHECK(ad.gamma() == doctest::Approx(std::exp(-1.0)));
  const ChannelSpec pd{ChannelKind::PhaseDamping, 2.0, 0.5};
  CHECK(pd.tau() == doctest::Approx(1.0));

  CHECK_THROWS_AS((ChannelSpec{ChannelKind::AmplitudeDamping, 0.0, 1.0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ChannelSpec{ChannelKind::AmplitudeDamping, 1.0, -1.0}.validate()),
                  std::invalid_argument);
}

TEST_CASE("amplitude damping operators at d = 2") {
  const double gamma = 0.37;
  const KrausSet set = ad_kraus(2, gamma);
  REQUIRE(set.ops.size() == 2);
  Matrix a0 = Matrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(gamma);
  Matrix a1 = Matrix::Zero(2, 2);
  a1(0, 1) = std::sqrt(1.0 - gamma);
  CHECK(max_abs_diff(set.ops[0], a0) < 1e-14);
  CHECK(max_abs_diff(set.ops[1], a1) < 1e-14);
}

TEST_CASE("no damping at gamma = 1") {
  const KrausSet set = ad_kraus(4, 1.0);
  CHECK(max_abs_diff(set.ops[0], Matrix::Identity(4, 4)) < 1e-14);
  for (std::size_t mu = 1; mu < set.ops.size(); ++mu)
    CHECK(set.ops[mu].cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(ad_kraus(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ad_kraus(3, 1.5), std::invalid_argument);
}

TEST_CASE("completeness across the parameter grid") {
  for (int d = 2; d <= 6; ++d) {
    for (double gamma : {0.01, 0.05, 0.3, 0.7, 1.0})
      CHECK(ad_kraus(d, gamma).completeness_residual() <= 1e-10);
    for (double tau : {0.0, 0.1, 1.0, 5.0, 30.0})
      CHECK(pd_kraus(d, tau).completeness_residual() <= 1e-10);
  }
}

TEST_CASE("dephasing: finite family reproduces the unbounded one") {
  const double tau = 0.8;

  // mu = 0 member of the raw family at d = 3
  const Matrix p0 = pd_raw_member(3, tau, 0);
  CHECK(std::abs(p0(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(p0(1, 1) - std::exp(-tau / 2.0)) < 1e-14);
  CHECK(std::abs(p0(2, 2) - std::exp(-2.0 * tau)) < 1e-14);

  Rng rng(3);
  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = testutil::random_density(QuditSystem(d, 1), d, rng);
    const DensityMatrix finite = apply_single(rho, 1, pd_kraus(d, tau));
    const DensityMatrix raw = pd_raw_apply(rho, tau, 200);
    CHECK(max_abs_diff(finite.rho, raw.rho) < 1e-12);
  }
}

TEST_CASE("single-site application") {
  Rng rng(17);
  const QuditSystem sys(3, 2);
  const DensityMatrix rho = testutil::random_density(sys, 3, rng);

  SUBCASE("identity family leaves the state alone") {
    const KrausSet id{3, {Matrix::Identity(3, 3)}};
    CHECK(max_abs_diff(apply_single(rho, 2, id).rho, rho.rho) < 1e-14);
  }

  SUBCASE("deep amplitude damping empties every level") {
    const DensityMatrix single = testutil::random_density(QuditSystem(4, 1), 4, rng);
    const DensityMatrix out = apply_single(single, 1, ad_kraus(4, std::exp(-40.0)));
    Matrix ground = Matrix::Zero(4, 4);
    ground(0, 0) = 1.0;
    // residual coherences scale as sqrt(gamma) = e^{-20}
    CHECK(max_abs_diff(out.rho, ground) < 1e-8);
  }

  SUBCASE("qubit coherence decays as e^{-tau/2}") {
    const DensityMatrix qubit = to_density(plus_state(2));
    const double tau = 1.3;
    const DensityMatrix out = apply_single(qubit, 1, pd_kraus(2, tau));
    CHECK(std::abs(out.rho(0, 1) - 0.5 * std::exp(-tau / 2.0)) < 1e-13);
    CHECK(std::abs(out.rho(0, 0) - 0.5) < 1e-13);
  }

  SUBCASE("site bounds") {
    CHECK_THROWS_AS(apply_single(rho, 3, pd_kraus(3, 0.1)), std::out_of_range);
    CHECK_THROWS_AS(apply_single(rho, 1, pd_kraus(2, 0.1)), std::invalid_argument);
  }
}

TEST_CASE("whole-register application") {
  Rng rng(29);

  SUBCASE("one site reduces to apply_single") {
    const DensityMatrix rho = testutil::random_density(QuditSystem(3, 1), 2, rng);
    const ChannelSpec spec{ChannelKind::AmplitudeDamping, 1.0, 0.4};
    CHECK(max_abs_diff(apply_all(rho, spec).rho,
                       apply_single(rho, 1, ad_kraus(3, spec.gamma())).rho) < 1e-13);
  }

  SUBCASE("site order is irrelevant") {
    const QuditSystem sys(2, 3);
    const DensityMatrix rho = testutil::random_density(sys, 3, rng);
    const KrausSet kraus = ad_kraus(2, 0.6);
    std::vector<int> order{1, 2, 3};
    const DensityMatrix ref = apply_single(apply_single(apply_single(rho, 1, kraus), 2, kraus), 3, kraus);
    std::mt19937 shuffler(4);
    for (int trial = 0; trial < 4; ++trial) {
      std::shuffle(order.begin(), order.end(), shuffler);
      DensityMatrix out = rho;
      for (int s : order) out = apply_single(out, s, kraus);
      CHECK(max_abs_diff(out.rho, ref.rho) < 1e-12);
    }
  }

  SUBCASE("trace preserved, spectrum stays positive") {
    for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping}) {
      const QuditSystem sys(3, 2);
      const DensityMatrix rho = testutil::random_density(sys, 4, rng);
      const DensityMatrix out = apply_all(rho, ChannelSpec{kind, 1.0, 0.8});
      CHECK(trace_error(out) < 1e-12);
      CHECK(hermiticity_error(out) < 1e-12);
      CHECK(min_eigenvalue(out) >= -1e-10);
    }
  }
}

TEST_CASE("closed-form dephasing law") {
  Rng rng(41);

  SUBCASE("tau = 0 is the identity, diagonals never move") {
    const DensityMatrix rho = testutil::random_density(QuditSystem(3, 2), 3, rng);
    CHECK(max_abs_diff(pd_closed_form(rho, 0.0).rho, rho.rho) < 1e-15);
    const DensityMatrix damped = pd_closed_form(rho, 3.7);
    CHECK(max_abs_diff(Matrix(damped.rho.diagonal().asDiagonal()),
                       Matrix(rho.rho.diagonal().asDiagonal())) < 1e-15);
  }

  SUBCASE("matches the Kraus route") {
    for (int d : {2, 3, 4})
      for (int n : {1, 2, 3}) {
        if (std::pow(d, n) > 64) continue;
        const DensityMatrix rho = testutil::random_density(QuditSystem(d, n), 3, rng);
        for (double tau : {0.05, 0.9, 4.0}) {
          const DensityMatrix kraus_route =
              apply_all(rho, ChannelSpec{ChannelKind::PhaseDamping, 1.0, tau});
          CHECK(max_abs_diff(pd_closed_form(rho, tau).rho, kraus_route.rho) < 1e-12);
        }
      }
  }

  SUBCASE("full dephasing keeps only the diagonal") {
    const DensityMatrix rho = testutil::random_density(QuditSystem(4, 1), 4, rng);
    const DensityMatrix out = pd_closed_form(rho, 40.0);
    // slowest coherence falls off as e^{-tau/2}
    CHECK(max_abs_diff(out.rho, Matrix(rho.rho.diagonal().asDiagonal())) < 1e-8);
  }
}

TEST_CASE("composing exposures is a semigroup") {
  Rng rng(53);
  const DensityMatrix rho = testutil::random_density(QuditSystem(3, 2), 3, rng);

  const double t1 = 0.4, t2 = 0.9;
  const ChannelSpec ad1{ChannelKind::AmplitudeDamping, 1.0, t1};
  const ChannelSpec ad2{ChannelKind::AmplitudeDamping, 1.0, t2};
  const ChannelSpec ad12{ChannelKind::AmplitudeDamping, 1.0, t1 + t2};
  CHECK(max_abs_diff(apply_all(apply_all(rho, ad1), ad2).rho, apply_all(rho, ad12).rho) < 1e-12);

  const ChannelSpec pd1{ChannelKind::PhaseDamping, 1.0, t1};
  const ChannelSpec pd2{ChannelKind::PhaseDamping, 1.0, t2};
  const ChannelSpec pd12{ChannelKind::PhaseDamping, 1.0, t1 + t2};
  CHECK(max_abs_diff(apply_all(apply_all(rho, pd1), pd2).rho, apply_all(rho, pd12).rho) < 1e-12);
}

TEST_CASE("master-equation reference integrator") {
  Rng rng(61);

  SUBCASE("zero time returns the input") {
    const DensityMatrix rho = testutil::random_density(QuditSystem(3, 1), 3, rng);
    CHECK(max_abs_diff(lindblad_ad_reference(rho, 1.0, 0.0).rho, rho.rho) < 1e-14);
  }

  SUBCASE("excited qubit population decays exponentially") {
    Matrix excited = Matrix::Zero(2, 2);
    excited(1, 1) = 1.0;
    const DensityMatrix rho{QuditSystem(2, 1), excited};
    for (double t : {0.3, 1.0, 2.5}) {
      const DensityMatrix out = lindblad_ad_reference(rho, 1.0, t);
      CHECK(std::abs(std::real(out.rho(1, 1)) - std::exp(-t)) < 1e-9);
    }
  }

  SUBCASE("agrees with the Kraus family") {
    const DensityMatrix rho = testutil::random_density(QuditSystem(4, 1), 4, rng);
    const double t = 1.0;
    const DensityMatrix ode = lindblad_ad_reference(rho, 1.0, t);
    const DensityMatrix kraus = apply_single(rho, 1, ad_kraus(4, std::exp(-t)));
    CHECK(trace_distance(ode, kraus) < 1e-6);
  }

  SUBCASE("multi-qudit input is rejected") {
    const DensityMatrix rho = testutil::random_density(QuditSystem(2, 2), 2, rng);
    CHECK_THROWS_AS(lindblad_ad_reference(rho, 1.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("adjoint channel is unital") {
  for (int d : {2, 3, 4}) {
    CHECK(max_abs_diff(adjoint_apply(ad_kraus(d, 0.4), Matrix::Identity(d, d)),
                       Matrix::Identity(d, d)) < 1e-12);
    CHECK(max_abs_diff(adjoint_apply(pd_kraus(d, 1.7), Matrix::Identity(d, d)),
                       Matrix::Identity(d, d)) < 1e-12);
  }
}
