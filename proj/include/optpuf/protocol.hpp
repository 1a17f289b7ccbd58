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

#ifndef OPTPUF_PROTOCOL_HPP
#define OPTPUF_PROTOCOL_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "optpuf/enroll.hpp"
#include "optpuf/serialize.hpp"

namespace optpuf {

struct ChannelClosedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Acceptance policy for the verifier.
//
// epsilon: per-component tolerance on probability estimates.
// scale_constant: expected honest response weight; a negative value means
//   "use the enrolled omega_n * omega_p of the challenges in play", so loss
//   is compensated rather than read as tampering.
// rounds: challenge repetitions (also the repetition count for the
//   superposed-routing verification).
// min_accept_fraction: fraction of positive rounds required, relative to the
//   compensated scale.
struct VerificationPolicy {
  double epsilon = 0.05;
  double scale_constant = -1.0;
  int rounds = 20;
  double min_accept_fraction = 0.9;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Simulated duplex wire between prover and verifier.

// The electrical settings travel with the state: the prover's control module
// configures the mesh from the received challenge.
struct ChallengePayload {
  Challenge challenge;
  VectorXcd state;
};

struct ResponsePayload {
  VectorXcd state;
};

// Superposed routing: the verifier names the public branch challenges; the
// amplitude split stays on the prover side.
struct RoutedChallengePayload {
  std::vector<Challenge> challenges;
  VectorXcd state;
};

struct IndexSequencePayload {
  std::vector<std::int64_t> indices;
};

using Payload = std::variant<ChallengePayload, ResponsePayload,
                             RoutedChallengePayload, IndexSequencePayload>;

// Frame layout {protocol id, round, payload kind, payload}; payload_kind_name
// gives the wire tag for each alternative.
struct Message {
  std::string protocol_id;
  int round = 0;
  Payload payload;
};

const char* payload_kind_name(const Message& m);

// Wire representation of a frame: {protocol_id, round, payload_kind, payload}.
// The simulated channel passes typed values; this rendering pins the format
// for cross-language replay and audits.
Json message_to_json(const Message& m);

// In-order lossless duplex queue. Every send passes through the interposer
// hook, which an adversary may use to observe or replace messages in flight.
class DuplexChannel {
 public:
  using Interposer = std::function<Message(Message)>;

  DuplexChannel() = default;
  explicit DuplexChannel(Interposer interposer) : interposer_(std::move(interposer)) {}

  void send_to_prover(Message m);
  void send_to_verifier(Message m);
  Message recv_at_prover();
  Message recv_at_verifier();
  bool prover_pending() const { return !to_prover_.empty(); }
  bool verifier_pending() const { return !to_verifier_.empty(); }
  void close() { open_ = false; }
  bool is_open() const { return open_; }

 private:
  std::deque<Message> to_prover_;
  std::deque<Message> to_verifier_;
  Interposer interposer_;
  bool open_ = true;
};

// ---------------------------------------------------------------------------
// Transcripts and verdicts.

struct TranscriptEvent {
  int round = 0;
  std::int64_t challenge_id = 0;
  std::string state_descriptor;  // how the verifier prepared the round state
  double response_weight = 0.0;  // squared norm of the state that came back
  bool accept = false;
};

struct ProtocolTranscript {
  std::string protocol_id;
  std::vector<TranscriptEvent> events;
  // Classical message authentication: the index sequence as sent by the
  // prover side and as received by the verifier. A mismatch is visible here
  // for audit; the protocol itself does not bind the sequence.
  std::vector<std::int64_t> indices_sent;
  std::vector<std::int64_t> indices_received;
};

struct VerdictReport {
  bool accepted = false;
  double accept_fraction = 0.0;
  int rounds = 0;
  double scale_constant_used = 1.0;
  VerificationPolicy policy;
  ProtocolTranscript transcript;
  // Superposed-routing verification only:
  std::vector<double> branch_estimates;    // recovered |amplitude_k|^2
  std::vector<double> registered_weights;  // enrolled omega_n * omega_p echo
};

Json transcript_to_json(const ProtocolTranscript& t);
Json verdict_to_json(const VerdictReport& v);

// ---------------------------------------------------------------------------
// Quantum readout of the enrolled device.

struct RoundResult {
  bool accept = false;
  TranscriptEvent event;
};

// Estimates the branch probability vector |amplitude_k|^2 of a superposed
// routing from repeated two-outcome projective probes. Per repetition the
// caller supplies its reference branch responses for the state it sent; the
// probe direction cycles over the K single-branch directions and the 2 *
// K(K-1)/2 interference directions, which together identify the Hermitian
// coefficient matrix X = amplitude amplitude^dagger by linear least squares.
// Overlaps with the raw (unnormalized) references fold the registered branch
// weights into the model, so non-orthogonal and lossy branches need no
// separate correction.
class BranchProbabilityEstimator {
 public:
  explicit BranchProbabilityEstimator(std::size_t branches);

  std::size_t probe_cycle() const { return probes_.size(); }

  struct Outcome {
    bool sampled_positive = false;
    std::size_t probed_branch = 0;
  };

  // One repetition: probe index (cycle with rep % probe_cycle()), reference
  // branch responses for the sent state, the state that came back, and the
  // seed for the Bernoulli outcome draw.
  Outcome accumulate(std::size_t probe_index,
                     const std::vector<VectorXcd>& branch_responses,
                     const VectorXcd& response, std::uint64_t measure_seed);

  std::size_t repetitions() const { return repetitions_; }
  std::vector<double> estimates() const;  // diagonal of the least-squares X

 private:
  struct Probe {
    std::size_t k = 0, m = 0;
    enum class Kind { kSingle, kPairReal, kPairImag } kind = Kind::kSingle;
  };
  std::size_t branches_;
  std::vector<Probe> probes_;
  std::size_t repetitions_ = 0;
  Eigen::MatrixXd normal_;
  Eigen::VectorXd moment_;
};

// Verifier-side two-outcome check {|r><r|, I - |r><r|} of a returned state
// against the enrolled expectation r = normalized(expected_transfer * sent);
// one outcome is sampled with measure_seed.
bool projective_check(const CrpRecord& record, const VectorXcd& sent_state,
                      const VectorXcd& response_state, std::uint64_t measure_seed);

// Prover loop body: answers one pending challenge (plain or routed) with the
// device and sends the response back. Routed challenges need the prover's
// amplitude assignment.
void prover_serve_one(DuplexChannel& channel, const PufDevice& device,
                      std::uint64_t noise_seed,
                      const std::vector<Complex>* routing_amplitudes = nullptr);

// One verification round over an explicit channel: the verifier draws a
// Haar-random challenge state, the prover responds through its device, and
// the verifier samples the two-outcome projective check against the enrolled
// expectation. The measurement seed derives from state_seed.
RoundResult readout_round(const EnrollmentDb& db, const PufDevice& prover_device,
                          std::int64_t challenge_id, std::uint64_t state_seed,
                          std::uint64_t noise_seed, DuplexChannel& channel,
                          int round = 0);

RoundResult readout_round(const EnrollmentDb& db, const PufDevice& prover_device,
                          std::int64_t challenge_id, std::uint64_t state_seed,
                          std::uint64_t noise_seed);

// Repeated readout rounds, cycling over the enrolled challenge ids in sorted
// order. Accepts when accept_fraction >= min_accept_fraction * c, where c is
// the policy's scale constant (auto: mean enrolled weight of the used ids).
VerdictReport authenticate(const EnrollmentDb& db, const PufDevice& prover_device,
                           const VerificationPolicy& policy, std::uint64_t master_seed,
                           const DuplexChannel::Interposer& interposer = {});

// ---------------------------------------------------------------------------
// Message authentication.

struct MessageVector {
  std::vector<std::int64_t> elements;
  std::vector<std::int64_t> crp_indices;  // 1-based positions into the CRP table
};

// element -> (element mod crp_count) + 1, with the mathematical (non-negative)
// modulus. Indices travel in the clear; no decode step exists.
MessageVector encode_message(const std::vector<std::int64_t>& message,
                             std::int64_t crp_count);

// Per mapped index, runs `policy.rounds` readout rounds against that CRP;
// accepts only if every index accepts. The index sequence crosses the channel
// and may be tampered with; both views land in the transcript.
VerdictReport classical_message_auth(const EnrollmentDb& db,
                                     const PufDevice& prover_device,
                                     const std::vector<std::int64_t>& message,
                                     const VerificationPolicy& policy,
                                     std::uint64_t master_seed,
                                     const DuplexChannel::Interposer& interposer = {});

// Superposed-routing verification: the prover routes each challenge state
// over the selected CRPs with hidden amplitudes; the verifier estimates the
// branch probability vector from single- and paired-direction projective
// checks (a Gram-corrected least-squares over the enrolled branch responses)
// and accepts when the estimates are consistent with a unit-probability
// routing through the registered maps:
//   every estimate in [-epsilon, 1 + epsilon], and |sum - 1| <= epsilon.
VerdictReport quantum_message_auth(const EnrollmentDb& db,
                                   const PufDevice& prover_device,
                                   const std::vector<std::int64_t>& crp_ids,
                                   const std::vector<Complex>& amplitudes,
                                   const VerificationPolicy& policy,
                                   std::uint64_t master_seed,
                                   const DuplexChannel::Interposer& interposer = {});

}  // namespace optpuf

#endif  // OPTPUF_PROTOCOL_HPP
