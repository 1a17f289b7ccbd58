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

#ifndef OPTPUF_PHOTONIC_HPP
#define OPTPUF_PHOTONIC_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace optpuf {

using Complex = std::complex<double>;
using Eigen::Index;
using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Max-norm tolerance for the unitarity check; sized for double accumulation
// across up to ~100 composed two-mode factors.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

// Canonical angle representative in [0, 2*pi).
double wrap_angle(double x) noexcept;

struct MziPlacement {
  int layer = 0;
  int mode = 0;  // interferometer acts on waveguide modes (mode, mode + 1)
};

// Nearest-neighbor interferometer mesh. Placements are applied in listed
// order, input to output; the order is part of the topology's meaning.
struct MeshTopology {
  int n_modes = 0;
  std::vector<MziPlacement> placements;

  int mzi_count() const { return static_cast<int>(placements.size()); }

  // Triangular nearest-neighbor arrangement: layer L holds interferometers on
  // modes (0,1)..(n-2-L, n-1-L), for n*(n-1)/2 elements total.
  static MeshTopology triangular(int n_modes);

  // Brick-wall arrangement: `layers` alternating even/odd columns. Deep
  // meshes scramble small per-element phase differences into statistically
  // independent output profiles, which the shallow triangle does not.
  static MeshTopology rectangular(int n_modes, int layers);

  void validate() const;  // throws std::invalid_argument on bad placements
};

struct PhasePair {
  double theta = 0.0;
  double phi = 0.0;
};

// One (theta, phi) pair per MZI placement, radians, stored in [0, 2*pi).
struct PhaseSettings {
  std::vector<PhasePair> values;

  std::size_t size() const { return values.size(); }

  static PhaseSettings uniform(int count, double theta, double phi);
  static PhaseSettings random(int count, std::uint64_t seed);
};

// Two-mode interferometer transfer matrix (internal phase theta, output
// phase phi):
//
//   j e^{j theta/2} [ e^{j phi} sin(theta/2)   e^{j phi} cos(theta/2) ]
//                   [           cos(theta/2)            -sin(theta/2) ]
//
// The global j e^{j theta/2} factor is kept; comparisons elsewhere use
// phase-invariant quantities.
Matrix2cd mzi_unitary(double theta, double phi);

// N x N identity except for the 2x2 block `u2` on rows/cols (mode, mode+1).
MatrixXcd embed_two_mode(const Matrix2cd& u2, Index mode, Index n);

// Ordered product of the embedded per-MZI matrices: the first placement acts
// first on the input, i.e. U = E_last * ... * E_first.
MatrixXcd mesh_unitary(const MeshTopology& topology, const PhaseSettings& settings);

// Applies the same operator as mesh_unitary directly to an amplitude vector,
// in O(mzi_count) two-row updates.
void apply_mesh(const MeshTopology& topology, const PhaseSettings& settings,
                Eigen::Ref<VectorXcd> amplitudes);

// amplitudes <- u * amplitudes, with dimension checking.
VectorXcd evolve_single_photon(const MatrixXcd& u, const VectorXcd& state);

bool is_unitary(const MatrixXcd& m, double tol = kUnitaryTol);
bool is_normalized(const VectorXcd& state, double tol = kNormTol);

// |<a|b>|^2 for equal-dimension normalized states.
double fidelity(const VectorXcd& a, const VectorXcd& b);

// Matrix permanent via Ryser's inclusion-exclusion formula with Gray-code
// subset updates, O(2^n * n). Guarded to n <= kMaxPermanentSize.
inline constexpr Index kMaxPermanentSize = 12;
Complex permanent(const MatrixXcd& m);

// Single-photon (or general d-dimensional) state drawn from the unitarily
// invariant measure: iid complex Gaussian entries, normalized.
VectorXcd haar_random_state(Index dim, std::mt19937_64& rng);
VectorXcd haar_random_state(Index dim, std::uint64_t seed);

// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
// R-diagonal phase correction.
MatrixXcd haar_random_unitary(Index dim, std::mt19937_64& rng);
MatrixXcd haar_random_unitary(Index dim, std::uint64_t seed);

// Multinomial sample of per-mode detection counts from |amplitude_j|^2.
CountVector measure_counts(const VectorXcd& state, std::int64_t shots,
                           std::uint64_t seed);

}  // namespace optpuf

#endif  // OPTPUF_PHOTONIC_HPP
