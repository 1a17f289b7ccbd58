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

#ifndef OPTPUF_ENROLL_HPP
#define OPTPUF_ENROLL_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "optpuf/bigint.hpp"
#include "optpuf/device.hpp"

namespace optpuf {

inline constexpr int kDbFormatVersion = 1;

struct NotEnrolledError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One enrolled challenge-response pair. expected_transfer is the noise-free
// response map diag(loss) * U(settings + fingerprint) * diag(coupling); for an
// ideal device it is unitary.
struct CrpRecord {
  Challenge challenge;
  MatrixXcd expected_transfer;
  IntensityHistogram expected_histogram;
  ResponseWeights weights;
  std::int64_t enrollment_shots = 0;
};

struct CrpCapacity {
  BigUint value;
  std::string provenance;
};

// Verifier-side enrollment data. Records are kept sorted by challenge_id;
// ids are unique.
struct EnrollmentDb {
  std::string device_label;
  MeshTopology topology;
  std::string created_at;  // caller-supplied; never wall clock
  CrpCapacity crp_capacity_note;
  std::vector<CrpRecord> records;

  const CrpRecord* find(std::int64_t challenge_id) const;
  const CrpRecord& at(std::int64_t challenge_id) const;  // NotEnrolledError
  std::vector<std::int64_t> challenge_ids() const;
};

// Records, per challenge: the noise-free expected transfer (fingerprint
// included, jitter zeroed), a sampled intensity histogram at `shots`, and the
// omega_n / omega_p weights. Deterministic: sampling seeds derive from the
// device seed and challenge id.
EnrollmentDb enroll(const PufDevice& device, const std::vector<Challenge>& challenges,
                    std::int64_t shots, std::string device_label,
                    std::string created_at = "1970-01-01T00:00:00Z");

// Exact Catalan number C_n via the recurrence C_{n+1} = C_n * 2(2n+1)/(n+2).
BigUint catalan(int n);  // n in [0, 5000]

enum class CrpReference { kSmallDevice, kFullDevice };

// Challenge-response capacity bookkeeping. The two reference devices return
// stored characterization constants; custom meshes get the catalan(n) bound.
CrpCapacity crp_capacity(CrpReference ref);
CrpCapacity crp_capacity_custom(int n);

void save_db(const EnrollmentDb& db, const std::filesystem::path& path);
EnrollmentDb load_db(const std::filesystem::path& path);

}  // namespace optpuf

#endif  // OPTPUF_ENROLL_HPP
