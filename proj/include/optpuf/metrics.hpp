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

#ifndef OPTPUF_METRICS_HPP
#define OPTPUF_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "optpuf/device.hpp"
#include "optpuf/enroll.hpp"

namespace optpuf {

// Analog gap below which a bin difference is treated as noise by the loose
// Hamming distance. Sized so phase jitter around 0.005 rad stays below it
// while fabrication-scale differences clear it.
inline constexpr double kDefaultLooseTolerance = 0.01;

struct DistanceReport {
  std::string metric;
  std::vector<double> values;  // one per compared pair
  double mean = 0.0;
  double stddev = 0.0;

  static DistanceReport from_values(std::string metric, std::vector<double> values);
};

double euclidean_distance(const IntensityHistogram& h1, const IntensityHistogram& h2);

// bit j = 1 iff bin_j >= median(bins); ties at the median go to 1.
std::vector<std::uint8_t> binarize(const IntensityHistogram& h);

// Fraction of bins whose binarized bits differ AND whose analog gap reaches
// the tolerance. At tolerance 0 this is the plain fractional Hamming distance
// of the binarized vectors.
double loose_hamming(const IntensityHistogram& h1, const IntensityHistogram& h2,
                     double tolerance);

// Pairwise loose Hamming between devices on one challenge; each pair value is
// the mean over `repeats` derived-seed noisy responses.
DistanceReport hd_inter(const std::vector<PufDevice>& devices,
                        const Challenge& challenge, int repeats,
                        std::uint64_t seed, std::int64_t shots,
                        double tolerance = kDefaultLooseTolerance);

// Loose Hamming across repeated noisy responses of one device.
DistanceReport hd_intra(const PufDevice& device, const Challenge& challenge,
                        int repeats, std::uint64_t seed, std::int64_t shots,
                        double tolerance = kDefaultLooseTolerance);

// Mean pairwise loose Hamming across same-position enrolled histograms.
double uniqueness(const std::vector<EnrollmentDb>& dbs,
                  double tolerance = kDefaultLooseTolerance);

// CSV rows: metric,pair_id,value
void write_csv(const DistanceReport& report, std::ostream& out);

}  // namespace optpuf

#endif  // OPTPUF_METRICS_HPP
