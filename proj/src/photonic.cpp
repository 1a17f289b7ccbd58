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

#include "optpuf/photonic.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "optpuf/rng.hpp"

namespace optpuf {

double wrap_angle(double x) noexcept {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  // fmod can land exactly on 2*pi after the correction when x is a tiny
  // negative number.
  if (y >= kTwoPi) y = 0.0;
  return y;
}

MeshTopology MeshTopology::triangular(int n_modes) {
  if (n_modes < 2) {
    throw std::invalid_argument("triangular mesh needs at least 2 modes");
  }
  MeshTopology t;
  t.n_modes = n_modes;
  t.placements.reserve(static_cast<std::size_t>(n_modes) * (n_modes - 1) / 2);
  for (int layer = 0; layer <= n_modes - 2; ++layer) {
    for (int mode = 0; mode <= n_modes - 2 - layer; ++mode) {
      t.placements.push_back({layer, mode});
    }
  }
  return t;
}

MeshTopology MeshTopology::rectangular(int n_modes, int layers) {
  if (n_modes < 2) {
    throw std::invalid_argument("rectangular mesh needs at least 2 modes");
  }
  if (layers < 1) {
    throw std::invalid_argument("rectangular mesh needs at least 1 layer");
  }
  MeshTopology t;
  t.n_modes = n_modes;
  for (int layer = 0; layer < layers; ++layer) {
    for (int mode = layer % 2; mode <= n_modes - 2; mode += 2) {
      t.placements.push_back({layer, mode});
    }
  }
  return t;
}

void MeshTopology::validate() const {
  if (n_modes < 1) throw std::invalid_argument("topology needs n_modes >= 1");
  for (const auto& p : placements) {
    if (p.mode < 0 || p.mode > n_modes - 2) {
      throw std::invalid_argument("MZI placement mode " + std::to_string(p.mode) +
                                  " out of range for " + std::to_string(n_modes) +
                                  " modes");
    }
  }
}

PhaseSettings PhaseSettings::uniform(int count, double theta, double phi) {
  if (count < 0) throw std::invalid_argument("negative settings count");
  PhaseSettings s;
  s.values.assign(static_cast<std::size_t>(count),
                  PhasePair{wrap_angle(theta), wrap_angle(phi)});
  return s;
}

PhaseSettings PhaseSettings::random(int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("negative settings count");
  auto rng = make_engine(derive_seed(seed, "phase-settings"));
  std::uniform_real_distribution<double> dist(0.0, kTwoPi);
  PhaseSettings s;
  s.values.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double theta = dist(rng);
    double phi = dist(rng);
    s.values.push_back({wrap_angle(theta), wrap_angle(phi)});
  }
  return s;
}

Matrix2cd mzi_unitary(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("mzi_unitary: non-finite phase");
  }
  const double half = 0.5 * theta;
  const Complex global = Complex(0.0, 1.0) * std::polar(1.0, half);
  const Complex ephi = std::polar(1.0, phi);
  const double s = std::sin(half);
  const double c = std::cos(half);
  Matrix2cd u;
  u << global * ephi * s, global * ephi * c,
       global * c,        global * (-s);
  return u;
}

MatrixXcd embed_two_mode(const Matrix2cd& u2, Index mode, Index n) {
  if (mode < 0 || mode > n - 2) {
    throw std::invalid_argument("embed_two_mode: mode index out of range");
  }
  MatrixXcd u = MatrixXcd::Identity(n, n);
  u(mode, mode) = u2(0, 0);
  u(mode, mode + 1) = u2(0, 1);
  u(mode + 1, mode) = u2(1, 0);
  u(mode + 1, mode + 1) = u2(1, 1);
  return u;
}

namespace {

// Left-multiplies rows (mode, mode+1) of `m` by the 2x2 block.
void apply_block_rows(const Matrix2cd& u2, Index mode, MatrixXcd& m) {
  for (Index col = 0; col < m.cols(); ++col) {
    const Complex a = m(mode, col);
    const Complex b = m(mode + 1, col);
    m(mode, col) = u2(0, 0) * a + u2(0, 1) * b;
    m(mode + 1, col) = u2(1, 0) * a + u2(1, 1) * b;
  }
}

void check_settings(const MeshTopology& topology, const PhaseSettings& settings) {
  topology.validate();
  if (settings.size() != topology.placements.size()) {
    throw std::invalid_argument(
        "settings length " + std::to_string(settings.size()) +
        " does not match MZI count " + std::to_string(topology.placements.size()));
  }
}

}  // namespace

MatrixXcd mesh_unitary(const MeshTopology& topology, const PhaseSettings& settings) {
  check_settings(topology, settings);
  MatrixXcd u = MatrixXcd::Identity(topology.n_modes, topology.n_modes);
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto& p = topology.placements[k];
    apply_block_rows(mzi_unitary(settings.values[k].theta, settings.values[k].phi),
                     p.mode, u);
  }
  return u;
}

void apply_mesh(const MeshTopology& topology, const PhaseSettings& settings,
                Eigen::Ref<VectorXcd> amplitudes) {
  check_settings(topology, settings);
  if (amplitudes.size() != topology.n_modes) {
    throw std::invalid_argument("apply_mesh: state dimension mismatch");
  }
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto& p = topology.placements[k];
    const Matrix2cd u2 =
        mzi_unitary(settings.values[k].theta, settings.values[k].phi);
    const Complex a = amplitudes(p.mode);
    const Complex b = amplitudes(p.mode + 1);
    amplitudes(p.mode) = u2(0, 0) * a + u2(0, 1) * b;
    amplitudes(p.mode + 1) = u2(1, 0) * a + u2(1, 1) * b;
  }
}

VectorXcd evolve_single_photon(const MatrixXcd& u, const VectorXcd& state) {
  if (u.cols() != state.size()) {
    throw std::invalid_argument("evolve_single_photon: dimension mismatch");
  }
  return u * state;
}

bool is_unitary(const MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const MatrixXcd gram = m.adjoint() * m;
  const MatrixXcd delta = gram - MatrixXcd::Identity(m.rows(), m.cols());
  return delta.cwiseAbs().maxCoeff() <= tol;
}

bool is_normalized(const VectorXcd& state, double tol) {
  return std::abs(state.squaredNorm() - 1.0) <= tol;
}

double fidelity(const VectorXcd& a, const VectorXcd& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  return std::norm(a.dot(b));
}

Complex permanent(const MatrixXcd& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("permanent: matrix not square");
  if (n > kMaxPermanentSize) {
    throw std::length_error("permanent: size " + std::to_string(n) +
                            " exceeds supported maximum " +
                            std::to_string(kMaxPermanentSize));
  }
  if (n == 0) return Complex(1.0, 0.0);

  // Ryser: perm(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
  // Subsets are visited in Gray-code order so each step updates the n cached
  // row sums by a single column.
  std::vector<Complex> rowsum(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  std::uint64_t prev = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t changed = gray ^ prev;
    const int col = std::countr_zero(changed);
    const double sign_col = (gray & changed) ? 1.0 : -1.0;
    for (Index i = 0; i < n; ++i) {
      rowsum[static_cast<std::size_t>(i)] += sign_col * m(i, col);
    }
    Complex prod(1.0, 0.0);
    for (Index i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    const bool odd = (std::popcount(gray) & 1) != 0;
    total += odd ? -prod : prod;
    prev = gray;
  }
  const bool n_odd = (n & 1) != 0;
  return n_odd ? -total : total;  // (-1)^n times the signed subset sum
}

VectorXcd haar_random_state(Index dim, std::mt19937_64& rng) {
  if (dim < 2) throw std::invalid_argument("haar_random_state: dim must be >= 2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorXcd v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  const double norm = v.norm();
  if (norm == 0.0) return haar_random_state(dim, rng);  // measure-zero retry
  return v / norm;
}

VectorXcd haar_random_state(Index dim, std::uint64_t seed) {
  auto rng = make_engine(derive_seed(seed, "haar-state"));
  return haar_random_state(dim, rng);
}

MatrixXcd haar_random_unitary(Index dim, std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("haar_random_unitary: dim must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXcd g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases with the R diagonal so the distribution is the
  // invariant one rather than QR-convention dependent.
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    const Complex phase = (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

MatrixXcd haar_random_unitary(Index dim, std::uint64_t seed) {
  auto rng = make_engine(derive_seed(seed, "haar-unitary"));
  return haar_random_unitary(dim, rng);
}

CountVector measure_counts(const VectorXcd& state, std::int64_t shots,
                           std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("measure_counts: shots must be > 0");
  if (!is_normalized(state, 1e-9)) {
    throw std::invalid_argument("measure_counts: state not normalized");
  }
  const Index d = state.size();
  VectorXd probs(d);
  for (Index i = 0; i < d; ++i) probs(i) = std::norm(state(i));
  const double total = probs.sum();

  auto rng = make_engine(derive_seed(seed, "measure"));
  std::uniform_real_distribution<double> unif(0.0, total);
  CountVector counts = CountVector::Zero(d);
  for (std::int64_t s = 0; s < shots; ++s) {
    double u = unif(rng);
    Index bin = d - 1;
    for (Index i = 0; i < d; ++i) {
      u -= probs(i);
      if (u <= 0.0) {
        bin = i;
        break;
      }
    }
    counts(bin) += 1;
  }
  return counts;
}

}  // namespace optpuf
