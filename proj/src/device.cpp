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

#include "optpuf/device.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "optpuf/rng.hpp"

namespace optpuf {

InputSpec InputSpec::classical(std::vector<int> pumped_modes) {
  InputSpec s;
  s.kind = Kind::kClassicalModes;
  s.modes = std::move(pumped_modes);
  return s;
}

InputSpec InputSpec::dual_rail(int rail) {
  InputSpec s;
  s.kind = Kind::kDualRail;
  s.modes = {rail};
  return s;
}

InputSpec InputSpec::full_state() { return InputSpec{}; }

void InputSpec::validate(int n_modes) const {
  switch (kind) {
    case Kind::kClassicalModes:
      if (modes.empty()) {
        throw std::invalid_argument("classical input needs at least one pumped mode");
      }
      for (int m : modes) {
        if (m < 0 || m >= n_modes) {
          throw std::invalid_argument("pumped mode out of range");
        }
      }
      break;
    case Kind::kDualRail:
      if (modes.size() != 1 || modes[0] < 0 || modes[0] > n_modes - 2) {
        throw std::invalid_argument("dual-rail lower mode out of range");
      }
      break;
    case Kind::kFullState:
      break;
  }
}

VectorXcd InputSpec::canonical_state(int n_modes) const {
  validate(n_modes);
  VectorXcd v = VectorXcd::Zero(n_modes);
  switch (kind) {
    case Kind::kClassicalModes: {
      const double amp = 1.0 / std::sqrt(static_cast<double>(modes.size()));
      for (int m : modes) v(m) = Complex(amp, 0.0);
      break;
    }
    case Kind::kDualRail: {
      const double amp = 1.0 / std::sqrt(2.0);
      v(modes[0]) = Complex(amp, 0.0);
      v(modes[0] + 1) = Complex(amp, 0.0);
      break;
    }
    case Kind::kFullState: {
      const double amp = 1.0 / std::sqrt(static_cast<double>(n_modes));
      v.setConstant(Complex(amp, 0.0));
      break;
    }
  }
  return v;
}

PufDevice new_device(const MeshTopology& topology, std::uint64_t device_seed,
                     const DeviceParams& params) {
  topology.validate();
  if (params.fab_sigma < 0.0 || params.noise_sigma < 0.0) {
    throw std::invalid_argument("negative sigma");
  }
  if (params.loss_min < 0.0 || params.loss_min > 1.0 || params.coupling_min < 0.0 ||
      params.coupling_min > 1.0) {
    throw std::invalid_argument("loss/coupling ranges must lie in [0, 1]");
  }

  PufDevice d;
  d.topology = topology;
  d.noise_sigma = params.noise_sigma;
  d.device_seed = device_seed;

  auto rng = make_engine(derive_seed(device_seed, "fingerprint"));
  std::normal_distribution<double> gauss(0.0, 1.0);
  d.fingerprint.reserve(topology.placements.size());
  for (std::size_t i = 0; i < topology.placements.size(); ++i) {
    const double dtheta = params.fab_sigma * gauss(rng);
    const double dphi = params.fab_sigma * gauss(rng);
    d.fingerprint.push_back({dtheta, dphi});
  }

  auto loss_rng = make_engine(derive_seed(device_seed, "loss"));
  std::uniform_real_distribution<double> loss_dist(params.loss_min, 1.0);
  d.loss = VectorXd(topology.n_modes);
  for (int m = 0; m < topology.n_modes; ++m) d.loss(m) = loss_dist(loss_rng);

  auto coupling_rng = make_engine(derive_seed(device_seed, "coupling"));
  std::uniform_real_distribution<double> coupling_dist(params.coupling_min, 1.0);
  d.coupling = VectorXd(topology.n_modes);
  for (int m = 0; m < topology.n_modes; ++m) d.coupling(m) = coupling_dist(coupling_rng);

  return d;
}

PufDevice ideal_device(const MeshTopology& topology) {
  DeviceParams params;
  params.fab_sigma = 0.0;
  params.loss_min = 1.0;
  params.coupling_min = 1.0;
  params.noise_sigma = 0.0;
  PufDevice d = new_device(topology, 0, params);
  for (auto& f : d.fingerprint) f = PhasePair{0.0, 0.0};
  return d;
}

namespace {

void check_challenge(const PufDevice& device, const Challenge& challenge) {
  if (challenge.settings.size() != device.topology.placements.size()) {
    throw std::invalid_argument("challenge settings do not match device topology");
  }
  if (device.fingerprint.size() != device.topology.placements.size()) {
    throw std::invalid_argument("device fingerprint does not match topology");
  }
  challenge.input.validate(device.topology.n_modes);
}

// Commanded settings + static fingerprint + per-invocation jitter. The jitter
// stream is keyed on the challenge id so every response path (single, density,
// superposed routing) sees the same realization for a given noise_seed.
PhaseSettings realized_settings(const PufDevice& device, const Challenge& challenge,
                                std::uint64_t noise_seed) {
  PhaseSettings s = challenge.settings;
  if (device.noise_sigma > 0.0) {
    auto rng = make_engine(derive_seed(
        noise_seed, "phase-jitter",
        static_cast<std::uint64_t>(challenge.challenge_id)));
    std::normal_distribution<double> gauss(0.0, device.noise_sigma);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      s.values[i].theta =
          wrap_angle(s.values[i].theta + device.fingerprint[i].theta + gauss(rng));
      s.values[i].phi =
          wrap_angle(s.values[i].phi + device.fingerprint[i].phi + gauss(rng));
    }
  } else {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      s.values[i].theta = wrap_angle(s.values[i].theta + device.fingerprint[i].theta);
      s.values[i].phi = wrap_angle(s.values[i].phi + device.fingerprint[i].phi);
    }
  }
  return s;
}

}  // namespace

MatrixXcd effective_transfer(const PufDevice& device, const Challenge& challenge,
                             std::uint64_t noise_seed) {
  check_challenge(device, challenge);
  const PhaseSettings s = realized_settings(device, challenge, noise_seed);
  MatrixXcd u = mesh_unitary(device.topology, s);
  u = device.loss.cast<Complex>().asDiagonal() * u;
  return u;
}

VectorXcd apply_effective(const PufDevice& device, const Challenge& challenge,
                          const VectorXcd& state, std::uint64_t noise_seed) {
  check_challenge(device, challenge);
  if (state.size() != device.topology.n_modes) {
    throw std::invalid_argument("state dimension does not match device modes");
  }
  const PhaseSettings s = realized_settings(device, challenge, noise_seed);
  VectorXcd out = state;
  apply_mesh(device.topology, s, out);
  out.array() *= device.loss.cast<Complex>().array();
  return out;
}

VectorXd classical_intensities(const PufDevice& device, const Challenge& challenge,
                               std::uint64_t noise_seed) {
  check_challenge(device, challenge);
  const VectorXcd input = challenge.input.canonical_state(device.topology.n_modes);
  const VectorXcd out = apply_effective(device, challenge, input, noise_seed);
  VectorXd intensities = out.cwiseAbs2();
  const double total = intensities.sum();
  if (total <= 0.0) {
    throw std::invalid_argument("all light lost; cannot normalize intensities");
  }
  return intensities / total;
}

IntensityHistogram classical_response(const PufDevice& device,
                                      const Challenge& challenge,
                                      std::int64_t shots, std::uint64_t seed) {
  if (challenge.input.kind != InputSpec::Kind::kClassicalModes &&
      challenge.input.kind != InputSpec::Kind::kFullState) {
    throw std::invalid_argument("classical_response needs a classical input spec");
  }
  return sampled_histogram(device, challenge, shots, seed);
}

IntensityHistogram sampled_histogram(const PufDevice& device,
                                     const Challenge& challenge,
                                     std::int64_t shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  const VectorXd intensities =
      classical_intensities(device, challenge, derive_seed(seed, "response-noise"));

  // Multinomial shot sampling on the normalized profile.
  VectorXcd pseudo_state(intensities.size());
  for (Index i = 0; i < intensities.size(); ++i) {
    pseudo_state(i) = Complex(std::sqrt(intensities(i)), 0.0);
  }
  const CountVector counts =
      measure_counts(pseudo_state, shots, derive_seed(seed, "response-shots"));

  IntensityHistogram h;
  h.shots = shots;
  h.bins = counts.cast<double>() / static_cast<double>(shots);
  return h;
}

QuantumResponse quantum_response(const PufDevice& device, const Challenge& challenge,
                                 const VectorXcd& state, std::uint64_t noise_seed) {
  check_challenge(device, challenge);
  if (state.size() != device.topology.n_modes) {
    throw std::invalid_argument("state dimension does not match device modes");
  }
  VectorXcd coupled = state;
  coupled.array() *= device.coupling.cast<Complex>().array();
  QuantumResponse r;
  r.state = apply_effective(device, challenge, coupled, noise_seed);
  r.realized_weight = r.state.squaredNorm();
  return r;
}

MatrixXcd response_density(const PufDevice& device, const Challenge& challenge,
                           Complex a, Complex b, int rail,
                           std::uint64_t noise_seed) {
  check_challenge(device, challenge);
  const int n = device.topology.n_modes;
  if (rail < 0 || rail > n - 2) {
    throw std::invalid_argument("rail pair out of range");
  }
  const double pa = std::norm(a);
  const double pb = std::norm(b);
  if (std::abs(pa + pb - 1.0) > 1e-9) {
    throw std::invalid_argument("qubit amplitudes must satisfy |a|^2 + |b|^2 = 1");
  }

  // Logical components on rails (rail, rail+1): occupation 01 puts the photon
  // in the upper mode, 10 in the lower one.
  VectorXcd e01 = VectorXcd::Zero(n);
  e01(rail + 1) = Complex(1.0, 0.0);
  VectorXcd e10 = VectorXcd::Zero(n);
  e10(rail) = Complex(1.0, 0.0);

  const VectorXcd r01 = quantum_response(device, challenge, e01, noise_seed).state;
  const VectorXcd r10 = quantum_response(device, challenge, e10, noise_seed).state;

  return pa * (r01 * r01.adjoint()) + pb * (r10 * r10.adjoint());
}

QuantumResponse route_superposed(const PufDevice& device,
                                 const std::vector<Challenge>& challenges,
                                 const std::vector<Complex>& amplitudes,
                                 const VectorXcd& state, std::uint64_t noise_seed) {
  if (challenges.empty()) {
    throw std::invalid_argument("route_superposed needs at least one challenge");
  }
  if (challenges.size() != amplitudes.size()) {
    throw std::invalid_argument("amplitude count does not match challenge count");
  }
  double total = 0.0;
  for (const Complex& amp : amplitudes) total += std::norm(amp);
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "routing amplitudes must satisfy sum |amplitude|^2 = 1");
  }

  QuantumResponse r;
  r.state = VectorXcd::Zero(device.topology.n_modes);
  for (std::size_t k = 0; k < challenges.size(); ++k) {
    r.state += amplitudes[k] *
               quantum_response(device, challenges[k], state, noise_seed).state;
  }
  r.realized_weight = r.state.squaredNorm();
  return r;
}

PufDevice age_device(const PufDevice& device, int epochs,
                     double drift_sigma_per_epoch) {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (drift_sigma_per_epoch < 0.0) throw std::invalid_argument("negative drift");
  PufDevice aged = device;
  for (int e = 0; e < epochs; ++e) {
    const int epoch = device.age_epochs + 1 + e;
    auto rng = make_engine(derive_seed(device.device_seed, "age",
                                       static_cast<std::uint64_t>(epoch)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& f : aged.fingerprint) {
      f.theta += drift_sigma_per_epoch * gauss(rng);
      f.phi += drift_sigma_per_epoch * gauss(rng);
    }
  }
  aged.age_epochs = device.age_epochs + epochs;
  return aged;
}

ResponseWeights enrollment_weights(const PufDevice& device, const Challenge& challenge) {
  check_challenge(device, challenge);
  const VectorXcd input = challenge.input.canonical_state(device.topology.n_modes);
  VectorXcd coupled = input;
  coupled.array() *= device.coupling.cast<Complex>().array();

  ResponseWeights w;
  w.omega_n = coupled.squaredNorm();
  if (w.omega_n <= 0.0) {
    w.omega_p = 0.0;
    return w;
  }
  const VectorXcd coupled_unit = coupled / std::sqrt(w.omega_n);
  // Noise-free mesh + loss transmission; by construction
  // omega_n * omega_p == || diag(loss) U diag(coupling) input ||^2.
  PufDevice frozen = device;
  frozen.noise_sigma = 0.0;
  const VectorXcd out = apply_effective(frozen, challenge, coupled_unit, 0);
  // Passive optics cannot amplify; shave the last-bit float excess so the
  // weights honor their [0, 1] range.
  w.omega_n = std::min(w.omega_n, 1.0);
  w.omega_p = std::min(out.squaredNorm(), 1.0);
  return w;
}

bool is_valid_density(const MatrixXcd& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (rho.trace().real() > 1.0 + tol) return false;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(rho);
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace optpuf
