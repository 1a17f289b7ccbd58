// Copyright 2026 The optpuf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "optpuf/adversary.hpp"
#include "optpuf/rng.hpp"

using namespace optpuf;

namespace {

std::vector<Challenge> random_challenges(const MeshTopology& t, int count,
                                         std::uint64_t seed) {
  std::vector<Challenge> out;
  for (int i = 0; i < count; ++i) {
    Challenge c;
    c.challenge_id = i + 1;
    c.settings = PhaseSettings::random(
        t.mzi_count(), derive_seed(seed, "challenge", static_cast<std::uint64_t>(i)));
    c.input = InputSpec::full_state();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

TEST_CASE("measure_resend returns the aligned basis state deterministically") {
  const std::uint64_t basis_seed = 42;
  // Reconstruct the basis the attacker will draw and align the input with it.
  const MatrixXcd basis =
      haar_random_unitary(4, derive_seed(basis_seed, "resend-basis"));
  const VectorXcd aligned = basis.col(2);
  const VectorXcd resent = measure_resend(aligned, basis_seed);
  CHECK(fidelity(aligned, resent) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(measure_resend(2.0 * aligned, 1), std::invalid_argument);
}

TEST_CASE("measure_resend estimation fidelity averages 2/(d+1)") {
  struct Case {
    int d;
    int samples;
    double window;
  };
  // 1e5-sample checks at the dimensions quoted with +/-0.005; the remaining
  // dimensions sweep at 3e4 with a 3-sigma-scale window.
  for (const Case c : {Case{2, 100000, 0.005}, Case{8, 100000, 0.005},
                       Case{3, 30000, 0.01}, Case{4, 30000, 0.01},
                       Case{5, 30000, 0.01}, Case{6, 30000, 0.01},
                       Case{7, 30000, 0.01}}) {
    double acc = 0.0;
    for (int i = 0; i < c.samples; ++i) {
      const VectorXcd psi = haar_random_state(
          c.d, derive_seed(900 + static_cast<std::uint64_t>(c.d), "state",
                           static_cast<std::uint64_t>(i)));
      acc += fidelity(psi, measure_resend(
                               psi, derive_seed(901, "basis",
                                                static_cast<std::uint64_t>(i))));
    }
    const double mean = acc / c.samples;
    CHECK(std::abs(mean - 2.0 / (1.0 + c.d)) < c.window);
  }
}

TEST_CASE("bound_experiment saturates the single-copy bound") {
  const AttackReport r = bound_experiment(2, 1, 10000, 5);
  CHECK(r.theoretical_bound == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(r.success_rate - 2.0 / 3.0) < 3.0 * r.std_error + 0.005);

  const AttackReport r4 = bound_experiment(4, 1, 10000, 6);
  CHECK(r4.theoretical_bound == doctest::Approx(0.4));
  CHECK(std::abs(r4.success_rate - 0.4) < 3.0 * r4.std_error + 0.005);
}

TEST_CASE("bound_experiment stays below the multi-copy bound") {
  for (const int q : {2, 3}) {
    const AttackReport r = bound_experiment(4, q, 4000, 7);
    CHECK(r.theoretical_bound ==
          doctest::Approx(static_cast<double>(q + 1) / (q + 4)));
    CHECK(r.success_rate <= r.theoretical_bound + 3.0 * r.std_error);
    CHECK(r.q == q);
    CHECK(r.trials == 4000 * q);
  }
}

TEST_CASE("bound_experiment validates its parameters") {
  CHECK_THROWS_AS(bound_experiment(1, 1, 10000, 0), std::invalid_argument);
  CHECK_THROWS_AS(bound_experiment(4, 0, 10000, 0), std::invalid_argument);
  CHECK_THROWS_AS(bound_experiment(4, 4, 10000, 0), std::invalid_argument);
  CHECK_THROWS_AS(bound_experiment(4, 1, 999, 0), std::invalid_argument);
}

TEST_CASE("clone devices fail authentication at fabrication spread") {
  const MeshTopology t = MeshTopology::rectangular(8, 96);
  DeviceParams params;
  params.noise_sigma = 0.0;
  const PufDevice honest = new_device(t, 100, params);
  const EnrollmentDb db = enroll(honest, random_challenges(t, 4, 3), 4096, "d");

  VerificationPolicy policy;
  policy.rounds = 20;
  policy.min_accept_fraction = 0.9;

  const AttackReport r = clone_attack(db, 100, 101, params, policy, 500, 9);
  CHECK(r.success_rate < 0.01);
  CHECK(r.rounds == 20);

  CHECK_THROWS_AS(clone_attack(db, 100, 100, params, policy, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("without a fingerprint the clone is indistinguishable") {
  const MeshTopology t = MeshTopology::triangular(6);
  DeviceParams params;
  params.fab_sigma = 0.0;
  params.noise_sigma = 0.0;
  const PufDevice honest = new_device(t, 1, params);
  const EnrollmentDb db = enroll(honest, random_challenges(t, 2, 4), 4096, "d");
  VerificationPolicy policy;
  policy.rounds = 10;
  const AttackReport r = clone_attack(db, 1, 2, params, policy, 50, 2);
  CHECK(r.success_rate == 1.0);
}

TEST_CASE("clone acceptance decays with the round count") {
  // Moderate depth: single rounds still pass often, long runs almost never.
  const MeshTopology t = MeshTopology::rectangular(8, 32);
  DeviceParams params;
  params.noise_sigma = 0.0;
  const PufDevice honest = new_device(t, 7, params);
  const EnrollmentDb db = enroll(honest, random_challenges(t, 2, 5), 4096, "d");

  double previous = 1.1;
  double first = 0.0, last = 0.0;
  for (const int rounds : {1, 5, 20}) {
    VerificationPolicy policy;
    policy.rounds = rounds;
    policy.min_accept_fraction = 0.9;
    const AttackReport r = clone_attack(db, 7, 8, params, policy, 400, 3);
    CHECK(r.success_rate <= previous + 1e-12);
    if (rounds == 1) first = r.success_rate;
    if (rounds == 20) last = r.success_rate;
    previous = r.success_rate;
  }
  CHECK(first > last);
}

TEST_CASE("amplitude probing names the dominant branch but cannot validate") {
  const MeshTopology t = MeshTopology::triangular(8);
  const PufDevice prover = new_device(t, 200, DeviceParams{});
  const auto challenges = random_challenges(t, 3, 6);

  const std::vector<Complex> hidden = {Complex(1.0, 0.0), Complex(0.0, 0.0),
                                       Complex(0.0, 0.0)};
  const ProbeReport r = amplitude_probe(prover, challenges, hidden, 4000, 11);
  REQUIRE(r.estimates.size() == 3);
  CHECK(r.estimates[0] > r.estimates[1]);
  CHECK(r.estimates[0] > r.estimates[2]);
  // The registration weights are not available to the adversary, so the
  // proportionality check cannot be formed.
  CHECK_FALSE(r.omega_p_available);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("probe precision improves as 1/sqrt(probes)") {
  const MeshTopology t = MeshTopology::triangular(6);
  const PufDevice prover = new_device(t, 300, DeviceParams{});
  const auto challenges = random_challenges(t, 2, 8);
  const std::vector<Complex> hidden = {Complex(std::sqrt(0.5), 0.0),
                                       Complex(0.0, std::sqrt(0.5))};
  const ProbeReport small = amplitude_probe(prover, challenges, hidden, 2000, 4);
  const ProbeReport large = amplitude_probe(prover, challenges, hidden, 8000, 4);
  CHECK(large.std_error < small.std_error);
  CHECK(large.std_error == doctest::Approx(small.std_error / 2.0).epsilon(0.25));
}

TEST_CASE("binomial standard error formula") {
  CHECK(binomial_std_error(0.5, 100) == doctest::Approx(0.05));
  CHECK(binomial_std_error(0.0, 100) == 0.0);
  CHECK(binomial_std_error(0.5, 0) == 0.0);
}
