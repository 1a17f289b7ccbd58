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

#include "optpuf/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "optpuf/rng.hpp"

namespace optpuf {

double binomial_std_error(double p_hat, std::int64_t trials) {
  if (trials <= 0) return 0.0;
  return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) /
                   static_cast<double>(trials));
}

VectorXcd measure_resend(const VectorXcd& state, std::uint64_t basis_seed) {
  if (!is_normalized(state, 1e-9)) {
    throw std::invalid_argument("measure_resend: state not normalized");
  }
  const Index d = state.size();
  const MatrixXcd basis =
      haar_random_unitary(d, derive_seed(basis_seed, "resend-basis"));
  const VectorXcd coefficients = basis.adjoint() * state;

  auto rng = make_engine(derive_seed(basis_seed, "resend-outcome"));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng) * coefficients.squaredNorm();
  Index outcome = d - 1;
  for (Index k = 0; k < d; ++k) {
    u -= std::norm(coefficients(k));
    if (u <= 0.0) {
      outcome = k;
      break;
    }
  }
  return basis.col(outcome);
}

DuplexChannel::Interposer make_measure_resend_interposer(std::uint64_t seed) {
  // Shared counter so repeated interceptions use fresh bases.
  auto counter = std::make_shared<std::uint64_t>(0);
  return [seed, counter](Message m) -> Message {
    if (auto* cp = std::get_if<ChallengePayload>(&m.payload)) {
      cp->state = measure_resend(cp->state, derive_seed(seed, "mitm", (*counter)++));
    } else if (auto* rp = std::get_if<RoutedChallengePayload>(&m.payload)) {
      rp->state = measure_resend(rp->state, derive_seed(seed, "mitm", (*counter)++));
    }
    return m;
  };
}

AttackReport bound_experiment(int d, int q, std::int64_t trials,
                              std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("bound_experiment: d must be >= 2");
  if (q < 1 || q > 3) throw std::invalid_argument("bound_experiment: q must be in [1, 3]");
  if (trials < 1000) throw std::invalid_argument("bound_experiment: trials must be >= 1000");

  const MeshTopology topology = MeshTopology::triangular(d);
  const PufDevice device = ideal_device(topology);
  Challenge challenge;
  challenge.challenge_id = 1;
  challenge.settings =
      PhaseSettings::random(topology.mzi_count(), derive_seed(seed, "challenge"));
  challenge.input = InputSpec::full_state();
  const EnrollmentDb db = enroll(device, {challenge}, 4096, "bound-experiment");
  const CrpRecord& record = db.records.front();

  DuplexChannel channel(make_measure_resend_interposer(derive_seed(seed, "adversary")));

  std::int64_t successes = 0;
  std::uint64_t counter = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    // One challenge state, q identical copies on independent rails.
    const VectorXcd psi = haar_random_state(
        d, derive_seed(seed, "trial-state", static_cast<std::uint64_t>(t)));
    for (int copy = 0; copy < q; ++copy) {
      channel.send_to_prover(Message{"quantum-readout/1", static_cast<int>(t),
                                     ChallengePayload{challenge, psi}});
      prover_serve_one(channel, device, derive_seed(seed, "noise", counter));
      Message back = channel.recv_at_verifier();
      const auto& response = std::get<ResponsePayload>(back.payload);
      if (projective_check(record, psi, response.state,
                           derive_seed(seed, "measure", counter))) {
        ++successes;
      }
      ++counter;
    }
  }

  AttackReport report;
  report.attack = "measure_resend";
  report.d = d;
  report.q = q;
  report.trials = trials * q;
  report.success_rate =
      static_cast<double>(successes) / static_cast<double>(trials * q);
  report.theoretical_bound =
      static_cast<double>(q + 1) / static_cast<double>(q + d);
  report.std_error = binomial_std_error(report.success_rate, trials * q);
  return report;
}

AttackReport clone_attack(const EnrollmentDb& db, std::uint64_t true_seed,
                          std::uint64_t clone_seed, const DeviceParams& params,
                          const VerificationPolicy& policy, std::int64_t trials,
                          std::uint64_t seed) {
  if (clone_seed == true_seed) {
    throw std::invalid_argument("clone_attack: clone_seed equals true_seed");
  }
  if (trials < 1) throw std::invalid_argument("clone_attack: trials must be >= 1");
  policy.validate();

  const PufDevice clone = new_device(db.topology, clone_seed, params);
  std::int64_t accepted = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const VerdictReport verdict = authenticate(
        db, clone, policy, derive_seed(seed, "clone-run", static_cast<std::uint64_t>(t)));
    if (verdict.accepted) ++accepted;
  }

  AttackReport report;
  report.attack = "clone";
  report.d = db.topology.n_modes;
  report.q = 1;
  report.trials = trials;
  report.rounds = policy.rounds;
  report.success_rate = static_cast<double>(accepted) / static_cast<double>(trials);
  report.theoretical_bound = 0.0;  // no closed form; reported for comparison
  report.std_error = binomial_std_error(report.success_rate, trials);
  return report;
}

ProbeReport amplitude_probe(const PufDevice& prover_device,
                            const std::vector<Challenge>& branch_challenges,
                            const std::vector<Complex>& hidden_amplitudes,
                            std::int64_t probe_count, std::uint64_t seed) {
  if (branch_challenges.empty()) {
    throw std::invalid_argument("amplitude_probe: no branch challenges");
  }
  if (probe_count < 1) throw std::invalid_argument("amplitude_probe: probe_count < 1");

  const std::size_t branches = branch_challenges.size();
  const int dim = prover_device.topology.n_modes;

  // The adversary sees the public settings but not the fingerprint, loss, or
  // coupling: its reference responses come from a nominal device.
  const PufDevice nominal = ideal_device(prover_device.topology);
  std::vector<MatrixXcd> nominal_transfers;
  nominal_transfers.reserve(branches);
  for (const auto& ch : branch_challenges) {
    nominal_transfers.push_back(effective_transfer(nominal, ch, 0));
  }

  BranchProbabilityEstimator estimator(branches);
  std::vector<VectorXcd> references(branches);
  for (std::int64_t j = 0; j < probe_count; ++j) {
    const std::uint64_t jj = static_cast<std::uint64_t>(j);
    const VectorXcd psi = haar_random_state(dim, derive_seed(seed, "probe-state", jj));
    const QuantumResponse response =
        route_superposed(prover_device, branch_challenges, hidden_amplitudes, psi,
                         derive_seed(seed, "probe-noise", jj));
    for (std::size_t k = 0; k < branches; ++k) {
      references[k] = nominal_transfers[k] * psi;
    }
    estimator.accumulate(static_cast<std::size_t>(jj), references, response.state,
                         derive_seed(seed, "probe-measure", jj));
  }

  ProbeReport report;
  report.estimates = estimator.estimates();
  report.probes = probe_count;
  double mean = 0.0;
  for (double e : report.estimates) mean += e;
  mean /= static_cast<double>(branches);
  report.std_error = binomial_std_error(std::clamp(mean, 0.0, 1.0), probe_count);
  report.omega_p_available = false;
  report.note =
      "estimates use nominal transfers; without the registered per-branch "
      "weights the proportionality check cannot be evaluated";
  return report;
}

}  // namespace optpuf
