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

#ifndef OPTPUF_ADVERSARY_HPP
#define OPTPUF_ADVERSARY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "optpuf/protocol.hpp"

namespace optpuf {

struct AttackReport {
  std::string attack;
  int d = 0;          // challenge-space dimension
  int q = 0;          // copies of the challenge state per round
  std::int64_t trials = 0;
  double success_rate = 0.0;
  double theoretical_bound = 0.0;
  double std_error = 0.0;  // sqrt(p(1-p)/trials)
  int rounds = 0;          // protocol rounds (clone attack)
};

double binomial_std_error(double p_hat, std::int64_t trials);

// Challenge estimation without the device: measure the intercepted state in a
// seeded random orthonormal basis and forward the outcome state. The mean
// fidelity of the resent state to the original over random challenges is
// 2/(d+1), the best a single generic measurement can do.
VectorXcd measure_resend(const VectorXcd& state, std::uint64_t basis_seed);

// Per-copy acceptance of the estimate-and-resend interposer against the
// readout protocol on an ideal d-mode device, with q copies of the same
// challenge state per trial, reported against the (q+1)/(q+d) estimation
// bound. q = 1 saturates it; independent per-copy measurements stay below it
// for q > 1.
AttackReport bound_experiment(int d, int q, std::int64_t trials,
                              std::uint64_t seed);

// Interposer that replaces every challenge state in flight with the
// measure-resend estimate; basis seeds advance per intercepted message.
DuplexChannel::Interposer make_measure_resend_interposer(std::uint64_t seed);

// Substitute prover: same topology and commanded settings, fresh fingerprint.
// Reports the authenticate() acceptance rate over full protocol runs.
AttackReport clone_attack(const EnrollmentDb& db, std::uint64_t true_seed,
                          std::uint64_t clone_seed, const DeviceParams& params,
                          const VerificationPolicy& policy, std::int64_t trials,
                          std::uint64_t seed);

// What an adversary without the enrollment data can learn about a prover's
// hidden routing amplitudes by probing with self-chosen states: estimates are
// formed against nominal (fingerprint-free) transfers and cannot be validated
// without the registered weights.
struct ProbeReport {
  std::vector<double> estimates;
  std::int64_t probes = 0;
  double std_error = 0.0;
  bool omega_p_available = false;
  std::string note;
};

ProbeReport amplitude_probe(const PufDevice& prover_device,
                            const std::vector<Challenge>& branch_challenges,
                            const std::vector<Complex>& hidden_amplitudes,
                            std::int64_t probe_count, std::uint64_t seed);

}  // namespace optpuf

#endif  // OPTPUF_ADVERSARY_HPP
