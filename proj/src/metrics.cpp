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

#include "optpuf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "optpuf/rng.hpp"

namespace optpuf {

DistanceReport DistanceReport::from_values(std::string metric,
                                           std::vector<double> values) {
  DistanceReport r;
  r.metric = std::move(metric);
  r.values = std::move(values);
  if (r.values.empty()) return r;
  double sum = 0.0;
  for (double v : r.values) sum += v;
  r.mean = sum / static_cast<double>(r.values.size());
  double ss = 0.0;
  for (double v : r.values) ss += (v - r.mean) * (v - r.mean);
  r.stddev = std::sqrt(ss / static_cast<double>(r.values.size()));
  return r;
}

double euclidean_distance(const IntensityHistogram& h1, const IntensityHistogram& h2) {
  if (h1.bins.size() != h2.bins.size()) {
    throw std::invalid_argument("euclidean_distance: bin count mismatch");
  }
  return (h1.bins - h2.bins).norm();
}

namespace {

double median_of(const VectorXd& bins) {
  std::vector<double> v(bins.data(), bins.data() + bins.size());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<std::uint8_t> binarize(const IntensityHistogram& h) {
  if (h.bins.size() == 0) throw std::invalid_argument("binarize: empty histogram");
  const double med = median_of(h.bins);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(h.bins.size()));
  for (Index i = 0; i < h.bins.size(); ++i) {
    bits[static_cast<std::size_t>(i)] = h.bins(i) >= med ? 1 : 0;
  }
  return bits;
}

double loose_hamming(const IntensityHistogram& h1, const IntensityHistogram& h2,
                     double tolerance) {
  if (h1.bins.size() != h2.bins.size()) {
    throw std::invalid_argument("loose_hamming: bin count mismatch");
  }
  if (tolerance < 0.0) throw std::invalid_argument("loose_hamming: negative tolerance");
  const auto b1 = binarize(h1);
  const auto b2 = binarize(h2);
  int differing = 0;
  for (Index i = 0; i < h1.bins.size(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    // The gap test uses >= so that tolerance 0 degenerates to the plain
    // fractional Hamming distance of the binarized vectors.
    if (b1[k] != b2[k] && std::abs(h1.bins(i) - h2.bins(i)) >= tolerance) {
      ++differing;
    }
  }
  return static_cast<double>(differing) / static_cast<double>(h1.bins.size());
}

DistanceReport hd_inter(const std::vector<PufDevice>& devices,
                        const Challenge& challenge, int repeats,
                        std::uint64_t seed, std::int64_t shots, double tolerance) {
  if (devices.size() < 2) {
    throw std::invalid_argument("hd_inter: need at least 2 devices");
  }
  if (repeats < 1) throw std::invalid_argument("hd_inter: repeats must be >= 1");

  std::vector<double> values;
  values.reserve(devices.size() * (devices.size() - 1) / 2);
  for (std::size_t a = 0; a < devices.size(); ++a) {
    for (std::size_t b = a + 1; b < devices.size(); ++b) {
      double acc = 0.0;
      for (int r = 0; r < repeats; ++r) {
        const std::uint64_t counter =
            (static_cast<std::uint64_t>(a) << 40) ^
            (static_cast<std::uint64_t>(b) << 20) ^ static_cast<std::uint64_t>(r);
        const auto ha = sampled_histogram(devices[a], challenge, shots,
                                          derive_seed(seed, "inter-a", counter));
        const auto hb = sampled_histogram(devices[b], challenge, shots,
                                          derive_seed(seed, "inter-b", counter));
        acc += loose_hamming(ha, hb, tolerance);
      }
      values.push_back(acc / repeats);
    }
  }
  return DistanceReport::from_values("hd_inter", std::move(values));
}

DistanceReport hd_intra(const PufDevice& device, const Challenge& challenge,
                        int repeats, std::uint64_t seed, std::int64_t shots,
                        double tolerance) {
  if (repeats < 2) throw std::invalid_argument("hd_intra: repeats must be >= 2");

  std::vector<IntensityHistogram> histograms;
  histograms.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    histograms.push_back(sampled_histogram(
        device, challenge, shots,
        derive_seed(seed, "intra", static_cast<std::uint64_t>(r))));
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(repeats) * (repeats - 1) / 2);
  for (std::size_t a = 0; a < histograms.size(); ++a) {
    for (std::size_t b = a + 1; b < histograms.size(); ++b) {
      values.push_back(loose_hamming(histograms[a], histograms[b], tolerance));
    }
  }
  return DistanceReport::from_values("hd_intra", std::move(values));
}

double uniqueness(const std::vector<EnrollmentDb>& dbs, double tolerance) {
  if (dbs.size() < 2) throw std::invalid_argument("uniqueness: need at least 2 dbs");
  double acc = 0.0;
  std::int64_t count = 0;
  for (std::size_t a = 0; a < dbs.size(); ++a) {
    for (std::size_t b = a + 1; b < dbs.size(); ++b) {
      const std::size_t n = std::min(dbs[a].records.size(), dbs[b].records.size());
      for (std::size_t i = 0; i < n; ++i) {
        acc += loose_hamming(dbs[a].records[i].expected_histogram,
                             dbs[b].records[i].expected_histogram, tolerance);
        ++count;
      }
    }
  }
  if (count == 0) throw std::invalid_argument("uniqueness: no comparable records");
  return acc / static_cast<double>(count);
}

void write_csv(const DistanceReport& report, std::ostream& out) {
  out << "metric,pair_id,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    out << report.metric << ',' << i << ',' << report.values[i] << '\n';
  }
}

}  // namespace optpuf
