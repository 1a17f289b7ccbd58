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

#include "optpuf/enroll.hpp"

#include <algorithm>
#include <set>

#include "optpuf/rng.hpp"
#include "optpuf/serialize.hpp"

namespace optpuf {

const CrpRecord* EnrollmentDb::find(std::int64_t challenge_id) const {
  auto it = std::lower_bound(records.begin(), records.end(), challenge_id,
                             [](const CrpRecord& r, std::int64_t id) {
                               return r.challenge.challenge_id < id;
                             });
  if (it == records.end() || it->challenge.challenge_id != challenge_id) {
    return nullptr;
  }
  return &*it;
}

const CrpRecord& EnrollmentDb::at(std::int64_t challenge_id) const {
  const CrpRecord* r = find(challenge_id);
  if (r == nullptr) {
    throw NotEnrolledError("challenge " + std::to_string(challenge_id) +
                           " is not enrolled");
  }
  return *r;
}

std::vector<std::int64_t> EnrollmentDb::challenge_ids() const {
  std::vector<std::int64_t> ids;
  ids.reserve(records.size());
  for (const auto& r : records) ids.push_back(r.challenge.challenge_id);
  return ids;
}

EnrollmentDb enroll(const PufDevice& device, const std::vector<Challenge>& challenges,
                    std::int64_t shots, std::string device_label,
                    std::string created_at) {
  if (challenges.empty()) {
    throw std::invalid_argument("enroll: challenge list is empty");
  }
  if (shots <= 0) throw std::invalid_argument("enroll: shots must be positive");
  std::set<std::int64_t> seen;
  for (const auto& c : challenges) {
    if (!seen.insert(c.challenge_id).second) {
      throw std::invalid_argument("enroll: duplicate challenge_id " +
                                  std::to_string(c.challenge_id));
    }
  }

  // Enrollment happens in the trusted phase: jitter is zeroed, only the
  // static fingerprint enters the recorded transfer.
  PufDevice quiet = device;
  quiet.noise_sigma = 0.0;

  EnrollmentDb db;
  db.device_label = std::move(device_label);
  db.topology = device.topology;
  db.created_at = std::move(created_at);
  db.crp_capacity_note = crp_capacity_custom(device.topology.mzi_count());

  db.records.reserve(challenges.size());
  for (const auto& c : challenges) {
    CrpRecord rec;
    rec.challenge = c;
    MatrixXcd transfer = effective_transfer(quiet, c, 0);
    transfer = transfer * device.coupling.cast<Complex>().asDiagonal();
    rec.expected_transfer = std::move(transfer);
    const std::uint64_t sample_seed = derive_seed(
        device.device_seed, "enroll", static_cast<std::uint64_t>(c.challenge_id));
    rec.expected_histogram = sampled_histogram(quiet, c, shots, sample_seed);
    rec.weights = enrollment_weights(device, c);
    rec.enrollment_shots = shots;
    db.records.push_back(std::move(rec));
  }
  std::sort(db.records.begin(), db.records.end(),
            [](const CrpRecord& a, const CrpRecord& b) {
              return a.challenge.challenge_id < b.challenge.challenge_id;
            });
  return db;
}

BigUint catalan(int n) {
  if (n < 0 || n > 5000) {
    throw std::invalid_argument("catalan: n must lie in [0, 5000]");
  }
  BigUint c(1);
  for (int k = 0; k < n; ++k) {
    // C_{k+1} = C_k * 2(2k+1) / (k+2), always exact.
    c.mul_small(2ULL * (2ULL * k + 1ULL));
    c.div_exact_small(static_cast<std::uint64_t>(k) + 2ULL);
  }
  return c;
}

CrpCapacity crp_capacity(CrpReference ref) {
  CrpCapacity c;
  switch (ref) {
    case CrpReference::kSmallDevice:
      // 10-MZI reference device: 1.19e5 usable challenge-response pairs.
      c.value = BigUint::from_decimal("119000");
      c.provenance = "reference-device constant (10-MZI characterization)";
      break;
    case CrpReference::kFullDevice:
      // 88-MZI production device: 6.85e35 pairs.
      c.value = BigUint::from_decimal("685000000000000000000000000000000000");
      c.provenance = "reference-device constant (88-MZI characterization)";
      break;
  }
  return c;
}

CrpCapacity crp_capacity_custom(int n) {
  CrpCapacity c;
  c.value = catalan(n);
  c.provenance = "catalan-number upper bound";
  return c;
}

namespace {

Json record_to_json(const CrpRecord& r) {
  return Json{{"challenge", r.challenge},
              {"expected_transfer", matrix_to_json(r.expected_transfer)},
              {"expected_histogram", r.expected_histogram},
              {"omega_n", r.weights.omega_n},
              {"omega_p", r.weights.omega_p},
              {"enrollment_shots", r.enrollment_shots}};
}

CrpRecord record_from_json(const Json& j) {
  CrpRecord r;
  j.at("challenge").get_to(r.challenge);
  r.expected_transfer = matrix_from_json(j.at("expected_transfer"));
  j.at("expected_histogram").get_to(r.expected_histogram);
  j.at("omega_n").get_to(r.weights.omega_n);
  j.at("omega_p").get_to(r.weights.omega_p);
  j.at("enrollment_shots").get_to(r.enrollment_shots);
  return r;
}

}  // namespace

void save_db(const EnrollmentDb& db, const std::filesystem::path& path) {
  Json records = Json::array();
  for (const auto& r : db.records) records.push_back(record_to_json(r));
  Json j{{"format_version", kDbFormatVersion},
         {"device_label", db.device_label},
         {"topology", db.topology},
         {"created_at", db.created_at},
         {"crp_capacity_note",
          Json{{"value", db.crp_capacity_note.value.to_string()},
               {"provenance", db.crp_capacity_note.provenance}}},
         {"records", records}};
  write_text_file_atomic(path, j.dump(2) + "\n");
}

EnrollmentDb load_db(const std::filesystem::path& path) {
  const Json j = load_json_file(path);
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kDbFormatVersion) {
      throw UnsupportedVersionError("enrollment db format version " +
                                    std::to_string(version) + " not supported");
    }
    EnrollmentDb db;
    j.at("device_label").get_to(db.device_label);
    j.at("topology").get_to(db.topology);
    j.at("created_at").get_to(db.created_at);
    db.crp_capacity_note.value =
        BigUint::from_decimal(j.at("crp_capacity_note").at("value").get<std::string>());
    db.crp_capacity_note.provenance =
        j.at("crp_capacity_note").at("provenance").get<std::string>();
    for (const auto& rec : j.at("records")) {
      db.records.push_back(record_from_json(rec));
    }
    if (db.records.empty()) {
      throw ParseError("enrollment db has no records: " + path.string());
    }
    for (std::size_t i = 1; i < db.records.size(); ++i) {
      if (db.records[i - 1].challenge.challenge_id >=
          db.records[i].challenge.challenge_id) {
        throw ParseError("challenge ids not strictly increasing in " +
                         path.string());
      }
    }
    return db;
  } catch (const Json::exception& e) {
    throw ParseError("malformed enrollment db " + path.string() + ": " + e.what());
  }
}

}  // namespace optpuf
