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

#ifndef OPTPUF_FOCK_HPP
#define OPTPUF_FOCK_HPP

#include <map>
#include <vector>

#include "optpuf/photonic.hpp"

namespace optpuf {

// Permanent cost caps: the paper-scale protocols only need a few photons.
inline constexpr int kMaxFockPhotons = 4;
inline constexpr int kMaxFockModes = 12;

// Multi-photon state on n_modes waveguides: amplitudes over occupation
// patterns. All patterns with nonzero amplitude carry the same total photon
// number.
struct FockState {
  int n_modes = 0;
  std::map<std::vector<int>, Complex> amplitudes;

  static FockState basis(std::vector<int> occupations);

  int total_photons() const;
  double norm_squared() const;
  void validate() const;  // photon-number consistency + size guards
};

// All occupation patterns of `photons` photons in `modes` modes, in
// lexicographic order.
std::vector<std::vector<int>> occupation_patterns(int modes, int photons);

// Linear-optical evolution: for each output pattern S and input pattern T the
// transition amplitude is perm(U[S,T]) / sqrt(prod_j s_j! * prod_i t_i!),
// where U[S,T] repeats rows per S and columns per T.
FockState evolve_fock(const MatrixXcd& u, const FockState& input);

}  // namespace optpuf

#endif  // OPTPUF_FOCK_HPP
