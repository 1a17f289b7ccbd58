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

#include "optpuf/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "optpuf/rng.hpp"

namespace optpuf {

void VerificationPolicy::validate() const {
  if (rounds < 1) throw std::invalid_argument("policy: rounds must be >= 1");
  if (epsilon < 0.0) throw std::invalid_argument("policy: epsilon must be >= 0");
  if (min_accept_fraction < 0.0 || min_accept_fraction > 1.0) {
    throw std::invalid_argument("policy: min_accept_fraction must lie in [0, 1]");
  }
}

const char* payload_kind_name(const Message& m) {
  switch (m.payload.index()) {
    case 0: return "challenge-state";
    case 1: return "response-state";
    case 2: return "routed-challenge";
    case 3: return "index-sequence";
  }
  return "unknown";
}

Json message_to_json(const Message& m) {
  Json payload;
  if (const auto* cp = std::get_if<ChallengePayload>(&m.payload)) {
    payload = Json{{"challenge", cp->challenge}, {"state", vector_to_json(cp->state)}};
  } else if (const auto* rp = std::get_if<ResponsePayload>(&m.payload)) {
    payload = Json{{"state", vector_to_json(rp->state)}};
  } else if (const auto* sp = std::get_if<RoutedChallengePayload>(&m.payload)) {
    payload = Json{{"challenges", sp->challenges}, {"state", vector_to_json(sp->state)}};
  } else if (const auto* ip = std::get_if<IndexSequencePayload>(&m.payload)) {
    payload = Json{{"indices", ip->indices}};
  }
  return Json{{"protocol_id", m.protocol_id},
              {"round", m.round},
              {"payload_kind", payload_kind_name(m)},
              {"payload", payload}};
}

void DuplexChannel::send_to_prover(Message m) {
  if (!open_) throw ChannelClosedError("channel is closed");
  if (interposer_) m = interposer_(std::move(m));
  to_prover_.push_back(std::move(m));
}

void DuplexChannel::send_to_verifier(Message m) {
  if (!open_) throw ChannelClosedError("channel is closed");
  if (interposer_) m = interposer_(std::move(m));
  to_verifier_.push_back(std::move(m));
}

Message DuplexChannel::recv_at_prover() {
  if (!open_) throw ChannelClosedError("channel is closed");
  if (to_prover_.empty()) throw ChannelClosedError("no message pending for prover");
  Message m = std::move(to_prover_.front());
  to_prover_.pop_front();
  return m;
}

Message DuplexChannel::recv_at_verifier() {
  if (!open_) throw ChannelClosedError("channel is closed");
  if (to_verifier_.empty()) {
    throw ChannelClosedError("no message pending for verifier");
  }
  Message m = std::move(to_verifier_.front());
  to_verifier_.pop_front();
  return m;
}

Json transcript_to_json(const ProtocolTranscript& t) {
  Json events = Json::array();
  for (const auto& e : t.events) {
    events.push_back(Json{{"round", e.round},
                          {"challenge_id", e.challenge_id},
                          {"state", e.state_descriptor},
                          {"response_weight", e.response_weight},
                          {"accept", e.accept}});
  }
  return Json{{"protocol_id", t.protocol_id},
              {"events", events},
              {"indices_sent", t.indices_sent},
              {"indices_received", t.indices_received}};
}

Json verdict_to_json(const VerdictReport& v) {
  return Json{{"accepted", v.accepted},
              {"accept_fraction", v.accept_fraction},
              {"rounds", v.rounds},
              {"scale_constant_used", v.scale_constant_used},
              {"policy",
               Json{{"epsilon", v.policy.epsilon},
                    {"scale_constant", v.policy.scale_constant},
                    {"rounds", v.policy.rounds},
                    {"min_accept_fraction", v.policy.min_accept_fraction}}},
              {"branch_estimates", v.branch_estimates},
              {"registered_weights", v.registered_weights},
              {"transcript", transcript_to_json(v.transcript)}};
}

bool projective_check(const CrpRecord& record, const VectorXcd& sent_state,
                      const VectorXcd& response_state, std::uint64_t measure_seed) {
  VectorXcd expected = record.expected_transfer * sent_state;
  const double norm = expected.norm();
  if (norm <= 1e-15) return false;  // all light lost in the registered map
  expected /= norm;
  double p = std::norm(expected.dot(response_state));
  p = std::clamp(p, 0.0, 1.0);
  auto rng = make_engine(derive_seed(measure_seed, "verifier-measure"));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return unif(rng) < p;
}

namespace {

constexpr const char* kReadoutProtocolId = "quantum-readout/1";
constexpr const char* kClassicalMsgProtocolId = "classical-message-auth/1";
constexpr const char* kQuantumMsgProtocolId = "quantum-message-auth/1";

std::string haar_descriptor(int dim, std::uint64_t seed) {
  return "haar(d=" + std::to_string(dim) + ",seed=" + std::to_string(seed) + ")";
}

}  // namespace

void prover_serve_one(DuplexChannel& channel, const PufDevice& device,
                      std::uint64_t noise_seed,
                      const std::vector<Complex>* routing_amplitudes) {
  Message m = channel.recv_at_prover();
  if (auto* cp = std::get_if<ChallengePayload>(&m.payload)) {
    const QuantumResponse r =
        quantum_response(device, cp->challenge, cp->state, noise_seed);
    channel.send_to_verifier(
        Message{m.protocol_id, m.round, ResponsePayload{r.state}});
    return;
  }
  if (auto* rp = std::get_if<RoutedChallengePayload>(&m.payload)) {
    if (routing_amplitudes == nullptr) {
      throw std::invalid_argument("prover has no routing amplitudes configured");
    }
    const QuantumResponse r = route_superposed(device, rp->challenges,
                                               *routing_amplitudes, rp->state,
                                               noise_seed);
    channel.send_to_verifier(
        Message{m.protocol_id, m.round, ResponsePayload{r.state}});
    return;
  }
  throw std::invalid_argument("prover received unexpected payload kind");
}

namespace {

double effective_scale(const VerificationPolicy& policy,
                       const EnrollmentDb& db,
                       const std::vector<std::int64_t>& used_ids) {
  if (policy.scale_constant >= 0.0) return policy.scale_constant;
  double sum = 0.0;
  for (std::int64_t id : used_ids) sum += db.at(id).weights.product();
  return used_ids.empty() ? 1.0 : sum / static_cast<double>(used_ids.size());
}

}  // namespace

BranchProbabilityEstimator::BranchProbabilityEstimator(std::size_t branches)
    : branches_(branches) {
  if (branches < 1) throw std::invalid_argument("estimator needs >= 1 branch");
  for (std::size_t k = 0; k < branches; ++k) {
    probes_.push_back({k, k, Probe::Kind::kSingle});
  }
  for (std::size_t k = 0; k < branches; ++k) {
    for (std::size_t m = k + 1; m < branches; ++m) {
      probes_.push_back({k, m, Probe::Kind::kPairReal});
      probes_.push_back({k, m, Probe::Kind::kPairImag});
    }
  }
  const Index n = static_cast<Index>(branches * branches);
  normal_ = Eigen::MatrixXd::Zero(n, n);
  moment_ = Eigen::VectorXd::Zero(n);
}

BranchProbabilityEstimator::Outcome BranchProbabilityEstimator::accumulate(
    std::size_t probe_index, const std::vector<VectorXcd>& branch_responses,
    const VectorXcd& response, std::uint64_t measure_seed) {
  if (branch_responses.size() != branches_) {
    throw std::invalid_argument("estimator: branch response count mismatch");
  }
  const Probe& probe = probes_[probe_index % probes_.size()];

  Outcome out;
  out.probed_branch = probe.k;

  VectorXcd direction;
  if (probe.kind == Probe::Kind::kSingle) {
    direction = branch_responses[probe.k];
  } else {
    const VectorXcd& a = branch_responses[probe.k];
    const VectorXcd& b = branch_responses[probe.m];
    const double an = a.norm();
    const double bn = b.norm();
    if (an <= 1e-15 || bn <= 1e-15) return out;  // degenerate branch, skip
    direction = (probe.kind == Probe::Kind::kPairReal)
                    ? VectorXcd(a / an + b / bn)
                    : VectorXcd(a / an + Complex(0.0, 1.0) * (b / bn));
  }
  const double dn = direction.norm();
  if (dn <= 1e-15) return out;
  direction /= dn;

  std::vector<Complex> overlaps(branches_);
  for (std::size_t m = 0; m < branches_; ++m) {
    overlaps[m] = direction.dot(branch_responses[m]);
  }
  // Feature layout: [ |c_k|^2 ]_k, then per pair k<m the coefficients of
  // Re X_km and Im X_km in |<w|phi>|^2 = sum_{m,m'} X_mm' c_m conj(c_m').
  Eigen::VectorXd feature(static_cast<Index>(branches_ * branches_));
  Index f = 0;
  for (std::size_t k = 0; k < branches_; ++k) {
    feature(f++) = std::norm(overlaps[k]);
  }
  for (std::size_t k = 0; k < branches_; ++k) {
    for (std::size_t m = k + 1; m < branches_; ++m) {
      const Complex z = overlaps[k] * std::conj(overlaps[m]);
      feature(f++) = 2.0 * z.real();
      feature(f++) = -2.0 * z.imag();
    }
  }

  double p = std::norm(direction.dot(response));
  p = std::clamp(p, 0.0, 1.0);
  auto rng = make_engine(derive_seed(measure_seed, "probe-measure"));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double y = (unif(rng) < p) ? 1.0 : 0.0;

  normal_.selfadjointView<Eigen::Lower>().rankUpdate(feature, 1.0);
  moment_ += y * feature;
  ++repetitions_;

  out.sampled_positive = y > 0.5;
  return out;
}

std::vector<double> BranchProbabilityEstimator::estimates() const {
  Eigen::MatrixXd lhs = normal_.selfadjointView<Eigen::Lower>();
  // Tiny ridge keeps the solve well-posed when branches nearly coincide.
  lhs.diagonal().array() += 1e-9;
  const Eigen::VectorXd theta = lhs.ldlt().solve(moment_);
  std::vector<double> diag(branches_);
  for (std::size_t k = 0; k < branches_; ++k) {
    diag[k] = theta(static_cast<Index>(k));
  }
  return diag;
}

RoundResult readout_round(const EnrollmentDb& db, const PufDevice& prover_device,
                          std::int64_t challenge_id, std::uint64_t state_seed,
                          std::uint64_t noise_seed, DuplexChannel& channel,
                          int round) {
  const CrpRecord& record = db.at(challenge_id);
  const int dim = db.topology.n_modes;
  const VectorXcd psi = haar_random_state(dim, state_seed);

  channel.send_to_prover(
      Message{kReadoutProtocolId, round, ChallengePayload{record.challenge, psi}});
  prover_serve_one(channel, prover_device, noise_seed);
  Message back = channel.recv_at_verifier();
  const auto& response = std::get<ResponsePayload>(back.payload);

  RoundResult result;
  result.accept = projective_check(record, psi, response.state, state_seed);
  result.event.round = round;
  result.event.challenge_id = challenge_id;
  result.event.state_descriptor = haar_descriptor(dim, state_seed);
  result.event.response_weight = response.state.squaredNorm();
  result.event.accept = result.accept;
  return result;
}

RoundResult readout_round(const EnrollmentDb& db, const PufDevice& prover_device,
                          std::int64_t challenge_id, std::uint64_t state_seed,
                          std::uint64_t noise_seed) {
  DuplexChannel channel;
  return readout_round(db, prover_device, challenge_id, state_seed, noise_seed,
                       channel);
}

VerdictReport authenticate(const EnrollmentDb& db, const PufDevice& prover_device,
                           const VerificationPolicy& policy, std::uint64_t master_seed,
                           const DuplexChannel::Interposer& interposer) {
  policy.validate();
  const auto ids = db.challenge_ids();
  if (ids.empty()) throw std::invalid_argument("authenticate: empty enrollment db");

  DuplexChannel channel(interposer);
  VerdictReport report;
  report.policy = policy;
  report.rounds = policy.rounds;
  report.transcript.protocol_id = kReadoutProtocolId;

  std::vector<std::int64_t> used_ids;
  int accepted_rounds = 0;
  for (int r = 0; r < policy.rounds; ++r) {
    const std::int64_t id = ids[static_cast<std::size_t>(r) % ids.size()];
    used_ids.push_back(id);
    const std::uint64_t state_seed =
        derive_seed(master_seed, "round-state", static_cast<std::uint64_t>(r));
    const std::uint64_t noise_seed =
        derive_seed(master_seed, "round-noise", static_cast<std::uint64_t>(r));
    RoundResult rr =
        readout_round(db, prover_device, id, state_seed, noise_seed, channel, r);
    accepted_rounds += rr.accept ? 1 : 0;
    report.transcript.events.push_back(std::move(rr.event));
  }

  report.accept_fraction =
      static_cast<double>(accepted_rounds) / static_cast<double>(policy.rounds);
  report.scale_constant_used = effective_scale(policy, db, used_ids);
  // The slack keeps exact boundary fractions (e.g. 18/20 vs 0.9) from being
  // decided by last-bit rounding of the threshold product.
  report.accepted = report.accept_fraction + 1e-12 >=
                    policy.min_accept_fraction * report.scale_constant_used;
  return report;
}

MessageVector encode_message(const std::vector<std::int64_t>& message,
                             std::int64_t crp_count) {
  if (message.empty()) throw std::invalid_argument("encode_message: empty message");
  if (crp_count < 2) throw std::invalid_argument("encode_message: crp_count must be >= 2");
  MessageVector mv;
  mv.elements = message;
  mv.crp_indices.reserve(message.size());
  for (std::int64_t x : message) {
    std::int64_t m = x % crp_count;
    if (m < 0) m += crp_count;
    mv.crp_indices.push_back(m + 1);
  }
  return mv;
}

VerdictReport classical_message_auth(const EnrollmentDb& db,
                                     const PufDevice& prover_device,
                                     const std::vector<std::int64_t>& message,
                                     const VerificationPolicy& policy,
                                     std::uint64_t master_seed,
                                     const DuplexChannel::Interposer& interposer) {
  policy.validate();
  const auto ids = db.challenge_ids();
  const MessageVector mv =
      encode_message(message, static_cast<std::int64_t>(ids.size()));

  DuplexChannel channel(interposer);
  VerdictReport report;
  report.policy = policy;
  report.transcript.protocol_id = kClassicalMsgProtocolId;
  report.transcript.indices_sent = mv.crp_indices;

  // Step 1: the index sequence crosses the public channel.
  channel.send_to_verifier(Message{kClassicalMsgProtocolId, 0,
                                   IndexSequencePayload{mv.crp_indices}});
  Message index_msg = channel.recv_at_verifier();
  const auto& received = std::get<IndexSequencePayload>(index_msg.payload).indices;
  report.transcript.indices_received = received;

  // Step 2: per received index, a full readout run restricted to that CRP.
  bool all_accept = true;
  int accepted_rounds = 0;
  int total_rounds = 0;
  double scale_acc = 0.0;
  for (std::size_t j = 0; j < received.size(); ++j) {
    const std::int64_t index = received[j];
    if (index < 1 || index > static_cast<std::int64_t>(ids.size())) {
      throw NotEnrolledError("message index " + std::to_string(index) +
                             " is outside the enrolled CRP table");
    }
    const std::int64_t id = ids[static_cast<std::size_t>(index - 1)];
    const double scale = effective_scale(policy, db, {id});
    scale_acc += scale;

    int index_accepts = 0;
    for (int r = 0; r < policy.rounds; ++r) {
      const std::uint64_t counter =
          static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(policy.rounds) +
          static_cast<std::uint64_t>(r);
      RoundResult rr = readout_round(
          db, prover_device, id, derive_seed(master_seed, "msg-state", counter),
          derive_seed(master_seed, "msg-noise", counter), channel, total_rounds);
      index_accepts += rr.accept ? 1 : 0;
      report.transcript.events.push_back(std::move(rr.event));
      ++total_rounds;
    }
    accepted_rounds += index_accepts;
    const double fraction =
        static_cast<double>(index_accepts) / static_cast<double>(policy.rounds);
    if (fraction + 1e-12 < policy.min_accept_fraction * scale) all_accept = false;
  }

  report.rounds = total_rounds;
  report.accept_fraction =
      total_rounds > 0
          ? static_cast<double>(accepted_rounds) / static_cast<double>(total_rounds)
          : 0.0;
  report.scale_constant_used =
      received.empty() ? 1.0 : scale_acc / static_cast<double>(received.size());
  report.accepted = all_accept && !received.empty();
  return report;
}

VerdictReport quantum_message_auth(const EnrollmentDb& db,
                                   const PufDevice& prover_device,
                                   const std::vector<std::int64_t>& crp_ids,
                                   const std::vector<Complex>& amplitudes,
                                   const VerificationPolicy& policy,
                                   std::uint64_t master_seed,
                                   const DuplexChannel::Interposer& interposer) {
  policy.validate();
  const std::size_t branches = crp_ids.size();
  if (branches < 2) {
    throw std::invalid_argument("quantum_message_auth: need at least 2 CRPs");
  }
  if (amplitudes.size() != branches) {
    throw std::invalid_argument("quantum_message_auth: amplitude/CRP count mismatch");
  }
  double total = 0.0;
  for (const Complex& a : amplitudes) total += std::norm(a);
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "quantum_message_auth: amplitudes must satisfy sum |amplitude|^2 = 1");
  }

  const int dim = db.topology.n_modes;
  std::vector<Challenge> challenges;
  std::vector<const MatrixXcd*> transfers;
  std::vector<double> weights;
  challenges.reserve(branches);
  for (std::int64_t id : crp_ids) {
    const CrpRecord& rec = db.at(id);
    challenges.push_back(rec.challenge);
    transfers.push_back(&rec.expected_transfer);
    weights.push_back(rec.weights.product());
  }

  DuplexChannel channel(interposer);
  VerdictReport report;
  report.policy = policy;
  report.rounds = policy.rounds;
  report.transcript.protocol_id = kQuantumMsgProtocolId;
  report.registered_weights = weights;

  BranchProbabilityEstimator estimator(branches);
  std::vector<VectorXcd> branch_expected(branches);

  for (int rep = 0; rep < policy.rounds; ++rep) {
    const std::uint64_t state_seed =
        derive_seed(master_seed, "qma-state", static_cast<std::uint64_t>(rep));
    const VectorXcd psi = haar_random_state(dim, state_seed);

    channel.send_to_prover(
        Message{kQuantumMsgProtocolId, rep, RoutedChallengePayload{challenges, psi}});
    prover_serve_one(channel, prover_device,
                     derive_seed(master_seed, "qma-noise",
                                 static_cast<std::uint64_t>(rep)),
                     &amplitudes);
    Message back = channel.recv_at_verifier();
    const VectorXcd& phi = std::get<ResponsePayload>(back.payload).state;

    for (std::size_t k = 0; k < branches; ++k) {
      branch_expected[k] = (*transfers[k]) * psi;
    }
    const auto outcome = estimator.accumulate(
        static_cast<std::size_t>(rep), branch_expected, phi,
        derive_seed(master_seed, "qma-measure", static_cast<std::uint64_t>(rep)));

    TranscriptEvent event;
    event.round = rep;
    event.challenge_id = crp_ids[outcome.probed_branch];
    event.state_descriptor = haar_descriptor(dim, state_seed);
    event.response_weight = phi.squaredNorm();
    event.accept = outcome.sampled_positive;
    report.transcript.events.push_back(std::move(event));
  }

  report.branch_estimates = estimator.estimates();
  double estimate_sum = 0.0;
  for (double e : report.branch_estimates) estimate_sum += e;

  bool in_range = true;
  for (double e : report.branch_estimates) {
    if (e < -policy.epsilon || e > 1.0 + policy.epsilon) in_range = false;
  }
  const bool sums_to_one = std::abs(estimate_sum - 1.0) <= policy.epsilon;
  report.accepted = in_range && sums_to_one;
  report.accept_fraction = estimate_sum;  // the explained routing probability
  report.scale_constant_used = effective_scale(policy, db, crp_ids);
  return report;
}

}  // namespace optpuf
