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

// Independent test oracles. Everything here recomputes expected values by a
// route different from the library implementation: full matrix products
// instead of in-place row updates, permutation sums instead of Ryser,
// creation-operator expansion instead of permanents.

#ifndef OPTPUF_TESTS_ORACLES_HPP
#define OPTPUF_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "optpuf/fock.hpp"
#include "optpuf/photonic.hpp"

namespace optpuf::oracles {

// Four-factor product form of the two-mode interferometer:
// (1/2) * phase(phi) * splitter * phase(theta) * splitter.
inline Matrix2cd mzi_product_form(double theta, double phi) {
  Matrix2cd outer_phase, splitter, inner_phase;
  outer_phase << std::polar(1.0, phi), 0.0, 0.0, 1.0;
  splitter << Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(0.0, 1.0),
      Complex(1.0, 0.0);
  inner_phase << std::polar(1.0, theta), 0.0, 0.0, 1.0;
  return 0.5 * outer_phase * splitter * inner_phase * splitter;
}

// Mesh operator by explicit dense products of embedded factors.
inline MatrixXcd mesh_product_form(const MeshTopology& topology,
                                   const PhaseSettings& settings) {
  MatrixXcd u = MatrixXcd::Identity(topology.n_modes, topology.n_modes);
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const Matrix2cd block =
        mzi_unitary(settings.values[k].theta, settings.values[k].phi);
    u = embed_two_mode(block, topology.placements[k].mode, topology.n_modes) * u;
  }
  return u;
}

// Permanent as the defining sum over permutations, O(n! n).
inline Complex permanent_by_permutations(const MatrixXcd& m) {
  const Index n = m.rows();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  Complex total(0.0, 0.0);
  do {
    Complex prod(1.0, 0.0);
    for (Index i = 0; i < n; ++i) {
      prod *= m(i, perm[static_cast<std::size_t>(i)]);
    }
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Fock evolution by expanding each input creation operator over output modes:
// enumerates all modes^q photon assignments.
inline FockState fock_by_operator_expansion(const MatrixXcd& u,
                                            const FockState& input) {
  const int modes = input.n_modes;
  FockState out;
  out.n_modes = modes;

  std::map<std::vector<int>, Complex> result;
  for (const auto& [occ, amp] : input.amplitudes) {
    if (std::norm(amp) == 0.0) continue;
    std::vector<int> sources;
    for (int m = 0; m < modes; ++m) {
      for (int k = 0; k < occ[static_cast<std::size_t>(m)]; ++k) sources.push_back(m);
    }
    const int q = static_cast<int>(sources.size());
    double t_fact = 1.0;
    for (int n : occ) {
      for (int i = 2; i <= n; ++i) t_fact *= i;
    }

    std::vector<int> assignment(static_cast<std::size_t>(q), 0);
    while (true) {
      Complex coeff = amp;
      std::vector<int> pattern(static_cast<std::size_t>(modes), 0);
      for (int k = 0; k < q; ++k) {
        coeff *= u(assignment[static_cast<std::size_t>(k)],
                   sources[static_cast<std::size_t>(k)]);
        pattern[static_cast<std::size_t>(assignment[static_cast<std::size_t>(k)])]++;
      }
      double s_fact = 1.0;
      for (int n : pattern) {
        for (int i = 2; i <= n; ++i) s_fact *= i;
      }
      result[pattern] += coeff * std::sqrt(s_fact / t_fact);

      int pos = q - 1;
      while (pos >= 0 && assignment[static_cast<std::size_t>(pos)] == modes - 1) {
        assignment[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      assignment[static_cast<std::size_t>(pos)]++;
    }
  }
  for (auto& [pattern, amp] : result) {
    if (std::norm(amp) > 1e-30) out.amplitudes.emplace(pattern, amp);
  }
  if (out.amplitudes.empty()) {
    out.amplitudes.emplace(std::vector<int>(static_cast<std::size_t>(modes), 0),
                           Complex(0.0, 0.0));
  }
  return out;
}

// P(X >= k_min) for X ~ Binomial(n, p).
inline double binomial_tail(int n, int k_min, double p) {
  double tail = 0.0;
  for (int k = k_min; k <= n; ++k) {
    double log_term = 0.0;
    for (int i = 0; i < k; ++i) {
      log_term += std::log(static_cast<double>(n - i)) -
                  std::log(static_cast<double>(i + 1));
    }
    log_term += k * std::log(p) + (n - k) * std::log1p(-p);
    tail += std::exp(log_term);
  }
  return tail;
}

// Largest absolute amplitude difference between two Fock states.
inline double fock_max_difference(const FockState& a, const FockState& b) {
  std::map<std::vector<int>, Complex> diff = a.amplitudes;
  for (const auto& [occ, amp] : b.amplitudes) diff[occ] -= amp;
  double max_diff = 0.0;
  for (const auto& [occ, d] : diff) {
    (void)occ;
    max_diff = std::max(max_diff, std::abs(d));
  }
  return max_diff;
}

// Chi-square critical values at significance 0.001 for df = 1..7.
inline double chi_square_critical_001(int df) {
  constexpr double table[] = {10.828, 13.816, 16.266, 18.467,
                              20.515, 22.458, 24.322};
  return table[df - 1];
}

}  // namespace optpuf::oracles

#endif  // OPTPUF_TESTS_ORACLES_HPP
