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

#ifndef OPTPUF_DEVICE_HPP
#define OPTPUF_DEVICE_HPP

#include <cstdint>
#include <vector>

#include "optpuf/photonic.hpp"

namespace optpuf {

// What enters the chip for a given challenge: classically pumped modes, a
// dual-rail single photon on modes (rail, rail+1), or a single photon spread
// over all modes (the readout protocol's challenge space).
struct InputSpec {
  enum class Kind { kClassicalModes, kDualRail, kFullState };

  Kind kind = Kind::kFullState;
  std::vector<int> modes;  // pumped modes (classical) or {rail} (dual-rail)

  static InputSpec classical(std::vector<int> pumped_modes);
  static InputSpec dual_rail(int rail);
  static InputSpec full_state();

  // Normalized reference input: equal amplitudes on the pumped modes, the
  // balanced dual-rail state, or the uniform superposition over all modes.
  VectorXcd canonical_state(int n_modes) const;
  void validate(int n_modes) const;
};

struct Challenge {
  std::int64_t challenge_id = 0;
  PhaseSettings settings;
  InputSpec input;
};

// Per-output-mode relative intensities, normalized to sum 1. `shots` records
// the sampling provenance (0 = analytic).
struct IntensityHistogram {
  VectorXd bins;
  std::int64_t shots = 0;
};

// Enrollment bookkeeping constants for one challenge: omega_n is the
// input-coupling transmission of the canonical input, omega_p the mesh+loss
// transmission of the coupled input. Their product is the noise-free response
// weight (squared norm).
struct ResponseWeights {
  double omega_n = 1.0;
  double omega_p = 1.0;
  double product() const { return omega_n * omega_p; }
};

struct DeviceParams {
  double fab_sigma = 0.1;      // rad, static per-MZI fingerprint spread
  double loss_min = 1.0;       // per-mode amplitude transmission in [loss_min, 1]
  double coupling_min = 1.0;   // per-mode input coupling in [coupling_min, 1]
  double noise_sigma = 0.005;  // rad, per-invocation phase jitter
};

// A simulated physical instance. The fingerprint is the unclonable part:
// static phase offsets the manufacturer cannot control, drawn once per
// device_seed.
struct PufDevice {
  MeshTopology topology;
  std::vector<PhasePair> fingerprint;  // (delta_theta, delta_phi) per MZI
  VectorXd loss;                       // amplitude transmission per output mode
  VectorXd coupling;                   // amplitude efficiency per input mode
  double noise_sigma = 0.0;
  int age_epochs = 0;
  std::uint64_t device_seed = 0;
};

PufDevice new_device(const MeshTopology& topology, std::uint64_t device_seed,
                     const DeviceParams& params);

// fab_sigma = 0, unit loss/coupling, zero jitter.
PufDevice ideal_device(const MeshTopology& topology);

// diag(loss) * mesh(settings + fingerprint + jitter). Input coupling is not
// included; quantum_response applies it before this map. Jitter is drawn from
// (noise_seed, challenge_id) so repeated calls with one seed are identical.
MatrixXcd effective_transfer(const PufDevice& device, const Challenge& challenge,
                             std::uint64_t noise_seed);

// Same operator applied to an amplitude vector without forming the matrix.
VectorXcd apply_effective(const PufDevice& device, const Challenge& challenge,
                          const VectorXcd& state, std::uint64_t noise_seed);

// Analytic per-mode |amplitude|^2 of the canonical input, renormalized.
VectorXd classical_intensities(const PufDevice& device, const Challenge& challenge,
                               std::uint64_t noise_seed);

// Photodetector histogram: analytic intensities + multinomial shot sampling.
// `seed` feeds both the phase jitter and the shot sampler.
IntensityHistogram classical_response(const PufDevice& device,
                                      const Challenge& challenge,
                                      std::int64_t shots, std::uint64_t seed);

// Same sampling for any input kind (detection profile of the canonical
// input); classical_response restricts this to classically pumped specs.
IntensityHistogram sampled_histogram(const PufDevice& device,
                                     const Challenge& challenge,
                                     std::int64_t shots, std::uint64_t seed);

struct QuantumResponse {
  VectorXcd state;              // NOT renormalized
  double realized_weight = 0;   // squared norm: the realized omega_n * omega_p
};

// diag(loss) * U * diag(coupling) applied to the challenge state.
QuantumResponse quantum_response(const PufDevice& device, const Challenge& challenge,
                                 const VectorXcd& state, std::uint64_t noise_seed);

// Dual-rail mixed-input response: the input density
// |a|^2 |0 1><0 1| + |b|^2 |1 0><1 0| on rails (rail, rail+1), conjugated by
// the coupled transfer map. trace = realized weight of the mixture.
MatrixXcd response_density(const PufDevice& device, const Challenge& challenge,
                           Complex a, Complex b, int rail,
                           std::uint64_t noise_seed);

// sum_k amplitudes[k] * transfer(challenge_k) applied to `state`, not
// renormalized. Per-branch jitter depends on (noise_seed, challenge_id) only,
// so routing is exactly linear in the amplitude vector at fixed seed.
QuantumResponse route_superposed(const PufDevice& device,
                                 const std::vector<Challenge>& challenges,
                                 const std::vector<Complex>& amplitudes,
                                 const VectorXcd& state, std::uint64_t noise_seed);

// Seeded Gaussian random walk on the fingerprint; epoch e always uses the
// same derived seed, so aging composes: age(age(d,1),1) == age(d,2).
PufDevice age_device(const PufDevice& device, int epochs,
                     double drift_sigma_per_epoch);

// Noise-free weight bookkeeping for enrollment.
ResponseWeights enrollment_weights(const PufDevice& device, const Challenge& challenge);

// Hermitian within tol, eigenvalues >= -tol, trace <= 1 + tol.
bool is_valid_density(const MatrixXcd& rho, double tol = 1e-10);

}  // namespace optpuf

#endif  // OPTPUF_DEVICE_HPP
