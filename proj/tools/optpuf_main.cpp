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

// Batch experiment driver. Every subcommand is deterministic for a given
// config: seeds are explicit, timestamps come from the config, and outputs
// are written atomically, so reruns produce byte-identical files.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "optpuf/adversary.hpp"
#include "optpuf/metrics.hpp"
#include "optpuf/protocol.hpp"
#include "optpuf/rng.hpp"
#include "optpuf/serialize.hpp"

namespace optpuf {
namespace {

constexpr int kExitAccept = 0;
constexpr int kExitError = 1;
constexpr int kExitReject = 2;

struct MeshConfig {
  std::string kind = "triangular";
  int n_modes = 8;
  int layers = 96;  // rectangular meshes only
};

struct ExperimentConfig {
  MeshConfig mesh;
  std::uint64_t device_seed = 1;
  int device_count = 2;
  double fab_sigma_rad = 0.1;
  double noise_sigma_rad = 0.005;
  double loss_min = 1.0;
  double coupling_min = 1.0;
  int challenge_count = 8;
  InputSpec challenge_input = InputSpec::full_state();
  std::uint64_t challenge_seed = 7;
  std::int64_t shots = 16384;
  VerificationPolicy policy;
  std::uint64_t master_seed = 0;
  std::string device_label = "device";
  std::string created_at = "1970-01-01T00:00:00Z";
  std::int64_t attack_trials = 20000;
  std::uint64_t clone_seed = 0;  // 0 means device_seed + 1
  std::int64_t probe_count = 4000;
  int metrics_repeats = 5;
  double loose_tolerance = kDefaultLooseTolerance;
};

template <typename T>
void read_field(const Json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

ExperimentConfig parse_config(const Json& j) {
  ExperimentConfig c;
  if (j.contains("mesh")) {
    const Json& m = j.at("mesh");
    read_field(m, "kind", c.mesh.kind);
    read_field(m, "n_modes", c.mesh.n_modes);
    read_field(m, "layers", c.mesh.layers);
  }
  read_field(j, "device_seed", c.device_seed);
  read_field(j, "device_count", c.device_count);
  read_field(j, "fab_sigma_rad", c.fab_sigma_rad);
  read_field(j, "noise_sigma_rad", c.noise_sigma_rad);
  read_field(j, "loss_min", c.loss_min);
  read_field(j, "coupling_min", c.coupling_min);
  read_field(j, "challenge_count", c.challenge_count);
  if (j.contains("challenge_input")) j.at("challenge_input").get_to(c.challenge_input);
  read_field(j, "challenge_seed", c.challenge_seed);
  read_field(j, "shots", c.shots);
  if (j.contains("policy")) {
    const Json& p = j.at("policy");
    read_field(p, "rounds", c.policy.rounds);
    read_field(p, "epsilon", c.policy.epsilon);
    read_field(p, "min_accept_fraction", c.policy.min_accept_fraction);
    read_field(p, "scale_constant", c.policy.scale_constant);
  }
  read_field(j, "master_seed", c.master_seed);
  read_field(j, "device_label", c.device_label);
  read_field(j, "created_at", c.created_at);
  read_field(j, "attack_trials", c.attack_trials);
  read_field(j, "clone_seed", c.clone_seed);
  read_field(j, "probe_count", c.probe_count);
  read_field(j, "metrics_repeats", c.metrics_repeats);
  read_field(j, "loose_tolerance", c.loose_tolerance);
  return c;
}

ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
  ExperimentConfig c = path.empty() ? ExperimentConfig{}
                                    : parse_config(load_json_file(path));
  if (seed) c.master_seed = *seed;
  return c;
}

MeshTopology make_topology(const MeshConfig& m) {
  if (m.kind == "triangular") return MeshTopology::triangular(m.n_modes);
  if (m.kind == "rectangular") return MeshTopology::rectangular(m.n_modes, m.layers);
  throw std::invalid_argument("unknown mesh kind: " + m.kind +
                              " (expected triangular or rectangular)");
}

DeviceParams device_params(const ExperimentConfig& c) {
  DeviceParams p;
  p.fab_sigma = c.fab_sigma_rad;
  p.noise_sigma = c.noise_sigma_rad;
  p.loss_min = c.loss_min;
  p.coupling_min = c.coupling_min;
  return p;
}

std::vector<Challenge> make_challenges(const ExperimentConfig& c,
                                       const MeshTopology& topology) {
  std::vector<Challenge> out;
  out.reserve(static_cast<std::size_t>(c.challenge_count));
  for (int i = 0; i < c.challenge_count; ++i) {
    Challenge ch;
    ch.challenge_id = i + 1;
    ch.settings = PhaseSettings::random(
        topology.mzi_count(),
        derive_seed(c.challenge_seed, "challenge", static_cast<std::uint64_t>(i)));
    ch.input = c.challenge_input;
    out.push_back(std::move(ch));
  }
  return out;
}

PufDevice build_device(const ExperimentConfig& c, std::uint64_t seed,
                       const std::string& device_file) {
  if (!device_file.empty()) return load_device(device_file);
  return new_device(make_topology(c.mesh), seed, device_params(c));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_enroll(const ExperimentConfig& c, const std::string& out_path,
               const std::string& device_out) {
  const MeshTopology topology = make_topology(c.mesh);
  const PufDevice device = new_device(topology, c.device_seed, device_params(c));
  const EnrollmentDb db =
      enroll(device, make_challenges(c, topology), c.shots, c.device_label,
             c.created_at);
  save_db(db, out_path);
  if (!device_out.empty()) save_device(device, device_out);

  double omega_p_min = 1.0, omega_p_max = 0.0;
  for (const auto& rec : db.records) {
    omega_p_min = std::min(omega_p_min, rec.weights.omega_p);
    omega_p_max = std::max(omega_p_max, rec.weights.omega_p);
  }
  Json summary{{"db_path", out_path},
               {"crp_count", db.records.size()},
               {"omega_p_min", omega_p_min},
               {"omega_p_max", omega_p_max},
               {"crp_capacity", db.crp_capacity_note.value.to_string()}};
  std::cout << summary.dump(2) << "\n";
  return kExitAccept;
}

int cmd_authenticate(const ExperimentConfig& c, const std::string& db_path,
                     std::uint64_t prover_seed, const std::string& device_file,
                     const std::string& out_path) {
  const EnrollmentDb db = load_db(db_path);
  const PufDevice prover = build_device(c, prover_seed, device_file);
  const VerdictReport verdict = authenticate(db, prover, c.policy, c.master_seed);
  const std::string text = verdict_to_json(verdict).dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text_file_atomic(out_path, text);
  return verdict.accepted ? kExitAccept : kExitReject;
}

int cmd_attack(const ExperimentConfig& c, const std::string& name,
               const std::string& out_path, const std::string& format) {
  std::string content;
  if (name == "measure_resend") {
    std::vector<AttackReport> reports;
    for (int d = 2; d <= 8; ++d) {
      reports.push_back(bound_experiment(
          d, 1, c.attack_trials,
          derive_seed(c.master_seed, "attack-d", static_cast<std::uint64_t>(d))));
    }
    if (format == "json") {
      Json rows = Json::array();
      for (const auto& r : reports) {
        rows.push_back(Json{{"attack", r.attack},
                            {"d", r.d},
                            {"q", r.q},
                            {"trials", r.trials},
                            {"success_rate", r.success_rate},
                            {"bound", r.theoretical_bound},
                            {"std_error", r.std_error}});
      }
      content = rows.dump(2) + "\n";
    } else {
      content = "attack,d,q,trials,success_rate,bound,std_error\n";
      for (const auto& r : reports) {
        content += r.attack + ',' + std::to_string(r.d) + ',' +
                   std::to_string(r.q) + ',' + std::to_string(r.trials) + ',' +
                   format_double(r.success_rate) + ',' +
                   format_double(r.theoretical_bound) + ',' +
                   format_double(r.std_error) + '\n';
      }
    }
  } else if (name == "clone") {
    const MeshTopology topology = make_topology(c.mesh);
    const PufDevice device = new_device(topology, c.device_seed, device_params(c));
    const EnrollmentDb db = enroll(device, make_challenges(c, topology), c.shots,
                                   c.device_label, c.created_at);
    const std::uint64_t clone_seed =
        c.clone_seed != 0 ? c.clone_seed : c.device_seed + 1;
    const AttackReport r =
        clone_attack(db, c.device_seed, clone_seed, device_params(c), c.policy,
                     c.attack_trials, derive_seed(c.master_seed, "clone-attack"));
    if (format == "json") {
      content = Json{{"attack", r.attack},
                     {"d", r.d},
                     {"rounds", r.rounds},
                     {"trials", r.trials},
                     {"success_rate", r.success_rate},
                     {"std_error", r.std_error}}
                    .dump(2) +
                "\n";
    } else {
      content = "attack,d,rounds,trials,success_rate,std_error\n";
      content += r.attack + ',' + std::to_string(r.d) + ',' +
                 std::to_string(r.rounds) + ',' + std::to_string(r.trials) + ',' +
                 format_double(r.success_rate) + ',' + format_double(r.std_error) +
                 '\n';
    }
  } else if (name == "amplitude_probe") {
    const MeshTopology topology = make_topology(c.mesh);
    const PufDevice prover = new_device(topology, c.device_seed, device_params(c));
    auto challenges = make_challenges(c, topology);
    if (challenges.size() > 3) challenges.resize(3);
    if (challenges.size() < 2) {
      throw std::invalid_argument("amplitude_probe needs challenge_count >= 2");
    }
    std::vector<Complex> hidden(challenges.size());
    const double amp = 1.0 / std::sqrt(static_cast<double>(hidden.size()));
    for (auto& h : hidden) h = Complex(amp, 0.0);
    const ProbeReport r =
        amplitude_probe(prover, challenges, hidden, c.probe_count,
                        derive_seed(c.master_seed, "amplitude-probe"));
    if (format == "json") {
      content = Json{{"attack", "amplitude_probe"},
                     {"estimates", r.estimates},
                     {"probes", r.probes},
                     {"std_error", r.std_error},
                     {"omega_p_available", r.omega_p_available},
                     {"note", r.note}}
                    .dump(2) +
                "\n";
    } else {
      content = "attack,branch,estimate,probes,std_error,omega_p_available\n";
      for (std::size_t k = 0; k < r.estimates.size(); ++k) {
        content += std::string("amplitude_probe,") + std::to_string(k) + ',' +
                   format_double(r.estimates[k]) + ',' + std::to_string(r.probes) +
                   ',' + format_double(r.std_error) + ',' +
                   (r.omega_p_available ? "true" : "false") + '\n';
      }
    }
  } else {
    std::cerr << "unknown attack '" << name
              << "'; valid names: measure_resend, clone, amplitude_probe\n";
    return kExitError;
  }
  write_text_file_atomic(out_path, content);
  std::cout << content;
  return kExitAccept;
}

int cmd_message_auth(const ExperimentConfig& c, const std::string& db_path,
                     const std::string& mode, const std::string& message_text,
                     const std::string& amplitudes_text, std::uint64_t prover_seed,
                     const std::string& device_file, const std::string& out_path) {
  const EnrollmentDb db = load_db(db_path);
  const PufDevice prover = build_device(c, prover_seed, device_file);

  VerdictReport verdict;
  if (mode == "classical") {
    const auto message = parse_int_list(message_text);
    verdict = classical_message_auth(db, prover, message, c.policy, c.master_seed);
  } else if (mode == "quantum") {
    const auto values = parse_double_list(amplitudes_text);
    double total = 0.0;
    for (double v : values) total += v * v;
    if (values.size() < 2 || std::abs(total - 1.0) > 1e-9) {
      std::cerr << "amplitude vector must satisfy |alpha|^2 + |beta|^2 + "
                   "|gamma|^2 = 1 (got squared sum "
                << total << " over " << values.size() << " branches)\n";
      return kExitError;
    }
    std::vector<Complex> amplitudes;
    amplitudes.reserve(values.size());
    for (double v : values) amplitudes.emplace_back(v, 0.0);
    const auto ids = db.challenge_ids();
    if (ids.size() < amplitudes.size()) {
      throw std::invalid_argument("enrollment db has fewer CRPs than amplitudes");
    }
    const std::vector<std::int64_t> crp_ids(ids.begin(),
                                            ids.begin() + amplitudes.size());
    verdict = quantum_message_auth(db, prover, crp_ids, amplitudes, c.policy,
                                   c.master_seed);
  } else {
    std::cerr << "unknown mode '" << mode << "'; expected classical or quantum\n";
    return kExitError;
  }

  std::cout << verdict_to_json(verdict).dump(2) << "\n";
  if (!out_path.empty()) {
    write_text_file_atomic(out_path,
                           transcript_to_json(verdict.transcript).dump(2) + "\n");
  }
  return verdict.accepted ? kExitAccept : kExitReject;
}

int cmd_metrics(const ExperimentConfig& c, const std::vector<std::string>& db_paths,
                const std::string& out_path, const std::string& format) {
  const MeshTopology topology = make_topology(c.mesh);
  std::vector<PufDevice> devices;
  for (int i = 0; i < c.device_count; ++i) {
    devices.push_back(new_device(topology, c.device_seed + static_cast<std::uint64_t>(i),
                                 device_params(c)));
  }
  const auto challenges = make_challenges(c, topology);
  const Challenge& probe = challenges.front();

  struct Row {
    std::string metric;
    double mean;
    double stddev;
    std::int64_t count;
  };
  std::vector<Row> rows;

  if (!devices.empty() && c.metrics_repeats >= 2) {
    const DistanceReport intra =
        hd_intra(devices.front(), probe, c.metrics_repeats,
                 derive_seed(c.master_seed, "metrics-intra"), c.shots,
                 c.loose_tolerance);
    rows.push_back({intra.metric, intra.mean, intra.stddev,
                    static_cast<std::int64_t>(intra.values.size())});
  }
  if (devices.size() >= 2) {
    const DistanceReport inter =
        hd_inter(devices, probe, c.metrics_repeats,
                 derive_seed(c.master_seed, "metrics-inter"), c.shots,
                 c.loose_tolerance);
    rows.push_back({inter.metric, inter.mean, inter.stddev,
                    static_cast<std::int64_t>(inter.values.size())});

    // Analog counterpart of hd_inter on the same pairs.
    std::vector<double> euclid;
    for (std::size_t a = 0; a < devices.size(); ++a) {
      for (std::size_t b = a + 1; b < devices.size(); ++b) {
        const auto ha = sampled_histogram(
            devices[a], probe, c.shots,
            derive_seed(c.master_seed, "metrics-euclid-a",
                        static_cast<std::uint64_t>(a * devices.size() + b)));
        const auto hb = sampled_histogram(
            devices[b], probe, c.shots,
            derive_seed(c.master_seed, "metrics-euclid-b",
                        static_cast<std::uint64_t>(a * devices.size() + b)));
        euclid.push_back(euclidean_distance(ha, hb));
      }
    }
    const DistanceReport er =
        DistanceReport::from_values("euclidean_inter", std::move(euclid));
    rows.push_back({er.metric, er.mean, er.stddev,
                    static_cast<std::int64_t>(er.values.size())});
  }
  if (db_paths.size() >= 2) {
    std::vector<EnrollmentDb> dbs;
    dbs.reserve(db_paths.size());
    for (const auto& p : db_paths) dbs.push_back(load_db(p));
    const double u = uniqueness(dbs, c.loose_tolerance);
    rows.push_back({"uniqueness", u, 0.0,
                    static_cast<std::int64_t>(db_paths.size())});
  }

  std::string content;
  if (format == "json") {
    Json out = Json::array();
    for (const auto& r : rows) {
      out.push_back(Json{{"metric", r.metric},
                         {"mean", r.mean},
                         {"stddev", r.stddev},
                         {"count", r.count}});
    }
    content = out.dump(2) + "\n";
  } else {
    content = "metric,mean,stddev,count\n";
    for (const auto& r : rows) {
      content += r.metric + ',' + format_double(r.mean) + ',' +
                 format_double(r.stddev) + ',' + std::to_string(r.count) + '\n';
    }
  }
  write_text_file_atomic(out_path, content);
  std::cout << content;
  return kExitAccept;
}

int cmd_age(const ExperimentConfig& c, const std::string& db_path, int epochs,
            double drift_sigma, std::uint64_t prover_seed,
            const std::string& device_file, const std::string& out_path,
            const std::string& format) {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  const EnrollmentDb db = load_db(db_path);
  PufDevice device = build_device(c, prover_seed, device_file);

  struct Row {
    int epoch;
    double accept_fraction;
    bool accepted;
  };
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(epochs));
  for (int e = 1; e <= epochs; ++e) {
    device = age_device(device, 1, drift_sigma);
    const VerdictReport v = authenticate(
        db, device, c.policy,
        derive_seed(c.master_seed, "age-run", static_cast<std::uint64_t>(e)));
    rows.push_back({e, v.accept_fraction, v.accepted});
  }

  std::string content;
  if (format == "json") {
    Json out = Json::array();
    for (const auto& r : rows) {
      out.push_back(Json{{"epoch", r.epoch},
                         {"accept_fraction", r.accept_fraction},
                         {"accepted", r.accepted}});
    }
    content = out.dump(2) + "\n";
  } else {
    content = "epoch,accept_fraction,accepted\n";
    for (const auto& r : rows) {
      content += std::to_string(r.epoch) + ',' + format_double(r.accept_fraction) +
                 ',' + (r.accepted ? "true" : "false") + '\n';
    }
  }
  write_text_file_atomic(out_path, content);
  std::cout << content;
  return kExitAccept;
}

int run(int argc, char** argv) {
  CLI::App app{"reconfigurable interferometer-mesh PUF authentication toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--seed", seed_override, "override the config master seed");

  // enroll
  auto* enroll_cmd = app.add_subcommand("enroll", "characterize a device into a CRP db");
  std::string enroll_out = "enrollment.json";
  std::string enroll_device_out;
  enroll_cmd->add_option("--out", enroll_out, "output db path");
  enroll_cmd->add_option("--device-out", enroll_device_out,
                         "also write the device descriptor");

  // authenticate
  auto* auth_cmd = app.add_subcommand("authenticate", "run the readout protocol");
  std::string auth_db;
  std::string auth_device_file;
  std::string auth_out;
  std::uint64_t prover_seed = 0;
  bool prover_seed_set = false;
  auth_cmd->add_option("--db", auth_db, "enrollment db path")->required();
  auth_cmd->add_option("--prover-seed", prover_seed, "prover device seed")
      ->each([&prover_seed_set](const std::string&) { prover_seed_set = true; });
  auth_cmd->add_option("--device", auth_device_file, "prover device descriptor file");
  auth_cmd->add_option("--out", auth_out, "also write the verdict to a file");

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "run an adversary experiment");
  std::string attack_name;
  std::string attack_out = "attack.csv";
  std::string attack_format = "csv";
  attack_cmd->add_option("--name", attack_name, "measure_resend | clone | amplitude_probe")
      ->required();
  attack_cmd->add_option("--out", attack_out, "report path");
  attack_cmd->add_option("--format", attack_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // message-auth
  auto* msg_cmd = app.add_subcommand("message-auth", "authenticate a message");
  std::string msg_db;
  std::string msg_mode;
  std::string msg_message;
  std::string msg_amplitudes;
  std::string msg_device_file;
  std::string msg_out;
  std::uint64_t msg_prover_seed = 0;
  bool msg_prover_seed_set = false;
  msg_cmd->add_option("--db", msg_db, "enrollment db path")->required();
  msg_cmd->add_option("--mode", msg_mode, "classical | quantum")->required();
  msg_cmd->add_option("--message", msg_message, "comma-separated integers (classical)");
  msg_cmd->add_option("--amplitudes", msg_amplitudes,
                      "comma-separated routing amplitudes (quantum)");
  msg_cmd->add_option("--prover-seed", msg_prover_seed, "prover device seed")
      ->each([&msg_prover_seed_set](const std::string&) { msg_prover_seed_set = true; });
  msg_cmd->add_option("--device", msg_device_file, "prover device descriptor file");
  msg_cmd->add_option("--out", msg_out, "transcript output path");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "device-quality statistics");
  std::vector<std::string> metrics_dbs;
  std::string metrics_out = "metrics.csv";
  std::string metrics_format = "csv";
  metrics_cmd->add_option("--db", metrics_dbs, "enrollment dbs (for uniqueness)");
  metrics_cmd->add_option("--out", metrics_out, "report path");
  metrics_cmd->add_option("--format", metrics_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // age
  auto* age_cmd = app.add_subcommand("age", "acceptance under fingerprint drift");
  std::string age_db;
  std::string age_device_file;
  std::string age_out = "age.csv";
  std::string age_format = "csv";
  int age_epochs = 100;
  double age_drift = 0.005;
  std::uint64_t age_prover_seed = 0;
  bool age_prover_seed_set = false;
  age_cmd->add_option("--db", age_db, "enrollment db path")->required();
  age_cmd->add_option("--epochs", age_epochs, "number of aging epochs");
  age_cmd->add_option("--drift-sigma-rad", age_drift, "per-epoch drift sigma");
  age_cmd->add_option("--prover-seed", age_prover_seed, "prover device seed")
      ->each([&age_prover_seed_set](const std::string&) { age_prover_seed_set = true; });
  age_cmd->add_option("--device", age_device_file, "prover device descriptor file");
  age_cmd->add_option("--out", age_out, "curve output path");
  age_cmd->add_option("--format", age_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitAccept : kExitError;
  }

  try {
    const ExperimentConfig config = load_config(config_path, seed_override);

    if (enroll_cmd->parsed()) {
      return cmd_enroll(config, enroll_out, enroll_device_out);
    }
    if (auth_cmd->parsed()) {
      const std::uint64_t seed = prover_seed_set ? prover_seed : config.device_seed;
      return cmd_authenticate(config, auth_db, seed, auth_device_file, auth_out);
    }
    if (attack_cmd->parsed()) {
      return cmd_attack(config, attack_name, attack_out, attack_format);
    }
    if (msg_cmd->parsed()) {
      const std::uint64_t seed =
          msg_prover_seed_set ? msg_prover_seed : config.device_seed;
      return cmd_message_auth(config, msg_db, msg_mode, msg_message,
                              msg_amplitudes, seed, msg_device_file, msg_out);
    }
    if (metrics_cmd->parsed()) {
      return cmd_metrics(config, metrics_dbs, metrics_out, metrics_format);
    }
    if (age_cmd->parsed()) {
      const std::uint64_t seed =
          age_prover_seed_set ? age_prover_seed : config.device_seed;
      return cmd_age(config, age_db, age_epochs, age_drift, seed, age_device_file,
                     age_out, age_format);
    }
    std::cerr << "no subcommand given\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace
}  // namespace optpuf

int main(int argc, char** argv) { return optpuf::run(argc, argv); }
