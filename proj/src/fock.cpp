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

#include "optpuf/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace optpuf {

namespace {

int pattern_total(const std::vector<int>& occ) {
  int total = 0;
  for (int n : occ) {
    if (n < 0) throw std::invalid_argument("negative occupation number");
    total += n;
  }
  return total;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void patterns_rec(int modes, int photons, int mode, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (mode == modes - 1) {
    current[static_cast<std::size_t>(mode)] = photons;
    out.push_back(current);
    return;
  }
  for (int n = photons; n >= 0; --n) {
    current[static_cast<std::size_t>(mode)] = photons - n;
    patterns_rec(modes, n, mode + 1, current, out);
  }
}

// Expands a pattern into the list of occupied modes with multiplicity,
// e.g. (2,0,1) -> {0,0,2}.
std::vector<int> pattern_modes(const std::vector<int>& occ) {
  std::vector<int> modes;
  for (int m = 0; m < static_cast<int>(occ.size()); ++m) {
    for (int k = 0; k < occ[static_cast<std::size_t>(m)]; ++k) modes.push_back(m);
  }
  return modes;
}

}  // namespace

FockState FockState::basis(std::vector<int> occupations) {
  FockState s;
  s.n_modes = static_cast<int>(occupations.size());
  s.amplitudes.emplace(std::move(occupations), Complex(1.0, 0.0));
  s.validate();
  return s;
}

int FockState::total_photons() const {
  for (const auto& [occ, amp] : amplitudes) {
    if (std::norm(amp) > 0.0) return pattern_total(occ);
  }
  return 0;
}

double FockState::norm_squared() const {
  double total = 0.0;
  for (const auto& [occ, amp] : amplitudes) total += std::norm(amp);
  return total;
}

void FockState::validate() const {
  if (n_modes < 1) throw std::invalid_argument("FockState needs n_modes >= 1");
  if (n_modes > kMaxFockModes) {
    throw std::length_error("FockState: " + std::to_string(n_modes) +
                            " modes exceeds supported maximum " +
                            std::to_string(kMaxFockModes));
  }
  if (amplitudes.empty()) throw std::invalid_argument("FockState has no amplitudes");
  int photons = -1;
  for (const auto& [occ, amp] : amplitudes) {
    if (static_cast<int>(occ.size()) != n_modes) {
      throw std::invalid_argument("occupation pattern length mismatch");
    }
    const int total = pattern_total(occ);
    if (std::norm(amp) == 0.0) continue;
    if (photons < 0) photons = total;
    if (total != photons) {
      throw std::invalid_argument("mixed total photon numbers in FockState");
    }
  }
  if (photons > kMaxFockPhotons) {
    throw std::length_error("FockState: " + std::to_string(photons) +
                            " photons exceeds supported maximum " +
                            std::to_string(kMaxFockPhotons));
  }
}

std::vector<std::vector<int>> occupation_patterns(int modes, int photons) {
  if (modes < 1 || photons < 0) {
    throw std::invalid_argument("occupation_patterns: bad arguments");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(modes), 0);
  patterns_rec(modes, photons, 0, current, out);
  return out;
}

FockState evolve_fock(const MatrixXcd& u, const FockState& input) {
  input.validate();
  if (u.rows() != u.cols() || u.rows() != input.n_modes) {
    throw std::invalid_argument("evolve_fock: matrix/mode dimension mismatch");
  }
  const int modes = input.n_modes;
  const int photons = input.total_photons();

  FockState out;
  out.n_modes = modes;
  if (photons == 0) {
    out.amplitudes = input.amplitudes;
    return out;
  }

  const auto outputs = occupation_patterns(modes, photons);
  // Cache each input term's expanded mode list and normalization.
  for (const auto& pattern : outputs) {
    const auto rows = pattern_modes(pattern);
    double s_fact = 1.0;
    for (int n : pattern) s_fact *= factorial(n);

    Complex amp(0.0, 0.0);
    for (const auto& [in_occ, in_amp] : input.amplitudes) {
      if (std::norm(in_amp) == 0.0) continue;
      const auto cols = pattern_modes(in_occ);
      double t_fact = 1.0;
      for (int n : in_occ) t_fact *= factorial(n);

      MatrixXcd sub(photons, photons);
      for (int r = 0; r < photons; ++r) {
        for (int c = 0; c < photons; ++c) {
          sub(r, c) = u(rows[static_cast<std::size_t>(r)],
                        cols[static_cast<std::size_t>(c)]);
        }
      }
      amp += in_amp * permanent(sub) / std::sqrt(s_fact * t_fact);
    }
    if (std::norm(amp) > 0.0) out.amplitudes.emplace(pattern, amp);
  }
  if (out.amplitudes.empty()) {
    // Fully destructive interference on every pattern cannot happen under a
    // unitary; keep an explicit zero on the first pattern for loss maps.
    out.amplitudes.emplace(outputs.front(), Complex(0.0, 0.0));
  }
  return out;
}

}  // namespace optpuf
