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

// End-to-end subcommand tests. The binary path comes from OPTPUF_BIN
// (set by ctest); the suite is skipped with a warning when it is absent.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "optpuf/serialize.hpp"

namespace fs = std::filesystem;
using optpuf::Json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const char* cli_path() { return std::getenv("OPTPUF_BIN"); }

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("optpuf_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string cmd = std::string(cli_path()) + " " + args + " > " +
                          out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_config(const fs::path& p, const Json& extra) {
  Json cfg{{"mesh", {{"kind", "rectangular"}, {"n_modes", 8}, {"layers", 96}}},
           {"device_seed", 11},
           {"challenge_count", 4},
           {"fab_sigma_rad", 0.1},
           {"noise_sigma_rad", 0.0},
           {"shots", 4096},
           {"policy",
            {{"rounds", 15}, {"epsilon", 0.1}, {"min_accept_fraction", 0.9}}},
           {"master_seed", 5}};
  for (const auto& [k, v] : extra.items()) cfg[k] = v;
  std::ofstream out(p);
  out << cfg.dump(2);
}

int csv_columns(const std::string& line) {
  return static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
}

// Every row must parse with the header's column count.
void check_csv_shape(const std::string& text) {
  std::stringstream ss(text);
  std::string header;
  REQUIRE(std::getline(ss, header));
  const int cols = csv_columns(header);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    CHECK(csv_columns(line) == cols);
  }
}

}  // namespace

TEST_CASE("command-line workflows") {
  if (cli_path() == nullptr) {
    MESSAGE("OPTPUF_BIN not set; skipping CLI tests");
    return;
  }
  const fs::path dir = work_dir();
  const fs::path cfg = dir / "config.json";
  write_config(cfg, Json::object());
  const std::string base = "--config " + cfg.string();

  SUBCASE("enroll is deterministic and summarizes the db") {
    const fs::path db1 = dir / "db1.json";
    const fs::path db2 = dir / "db2.json";
    RunResult r = run_cli(base + " enroll --out " + db1.string() +
                          " --device-out " + (dir / "dev.json").string());
    REQUIRE(r.exit_code == 0);
    const Json summary = Json::parse(r.output);
    CHECK(summary.at("crp_count").get<int>() == 4);
    CHECK(summary.at("omega_p_min").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fs::exists(db1));
    CHECK(fs::exists(dir / "dev.json"));

    run_cli(base + " enroll --out " + db2.string());
    CHECK(read_file(db1) == read_file(db2));
  }

  SUBCASE("authenticate separates honest and clone provers by exit code") {
    const fs::path db = dir / "auth_db.json";
    REQUIRE(run_cli(base + " enroll --out " + db.string()).exit_code == 0);

    RunResult honest = run_cli(base + " authenticate --db " + db.string());
    CHECK(honest.exit_code == 0);
    const Json verdict = Json::parse(honest.output);
    CHECK(verdict.at("accepted").get<bool>());
    CHECK(verdict.at("accept_fraction").get<double>() == 1.0);

    RunResult clone =
        run_cli(base + " authenticate --db " + db.string() + " --prover-seed 999");
    CHECK(clone.exit_code == 2);

    RunResult missing =
        run_cli(base + " authenticate --db " + (dir / "no_such.json").string());
    CHECK(missing.exit_code == 1);

    const fs::path corrupt = dir / "corrupt.json";
    std::ofstream(corrupt) << "{ not json";
    RunResult bad = run_cli(base + " authenticate --db " + corrupt.string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("error") != std::string::npos);
  }

  SUBCASE("attack reports carry the analytic bound column") {
    const fs::path cfg_small = dir / "config_small.json";
    write_config(cfg_small,
                 Json{{"attack_trials", 2000},
                      {"mesh", {{"kind", "triangular"}, {"n_modes", 4}}}});
    const fs::path out = dir / "mr.csv";
    RunResult r = run_cli("--config " + cfg_small.string() +
                          " attack --name measure_resend --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const std::string csv = read_file(out);
    check_csv_shape(csv);
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "attack,d,q,trials,success_rate,bound,std_error");
    int rows = 0;
    for (int d = 2; d <= 8; ++d) {
      REQUIRE(std::getline(ss, line));
      ++rows;
      std::stringstream row(line);
      std::string field;
      std::getline(row, field, ',');
      CHECK(field == "measure_resend");
      std::getline(row, field, ',');
      CHECK(std::stoi(field) == d);
      for (int skip = 0; skip < 3; ++skip) std::getline(row, field, ',');
      std::getline(row, field, ',');
      CHECK(std::stod(field) == doctest::Approx(2.0 / (1.0 + d)).epsilon(1e-12));
    }
    CHECK(rows == 7);

    // Determinism: identical bytes on rerun.
    const fs::path out2 = dir / "mr2.csv";
    run_cli("--config " + cfg_small.string() +
            " attack --name measure_resend --out " + out2.string());
    CHECK(read_file(out) == read_file(out2));

    RunResult unknown = run_cli(base + " attack --name bogus --out " +
                                (dir / "x.csv").string());
    CHECK(unknown.exit_code == 1);
    CHECK(unknown.output.find("measure_resend") != std::string::npos);
    CHECK(unknown.output.find("clone") != std::string::npos);
    CHECK(unknown.output.find("amplitude_probe") != std::string::npos);
  }

  SUBCASE("clone attack rows include the round count") {
    const fs::path cfg_clone = dir / "config_clone.json";
    write_config(cfg_clone, Json{{"attack_trials", 20}});
    const fs::path out = dir / "clone.csv";
    RunResult r = run_cli("--config " + cfg_clone.string() +
                          " attack --name clone --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const std::string csv = read_file(out);
    check_csv_shape(csv);
    CHECK(csv.find("attack,d,rounds,trials,success_rate,std_error") == 0);
    CHECK(csv.find("clone,8,15,20,") != std::string::npos);
  }

  SUBCASE("classical and quantum message authentication") {
    const fs::path db = dir / "msg_db.json";
    REQUIRE(run_cli(base + " enroll --out " + db.string()).exit_code == 0);

    RunResult classical = run_cli(base + " message-auth --db " + db.string() +
                                  " --mode classical --message 0,1,2");
    CHECK(classical.exit_code == 0);
    CHECK(Json::parse(classical.output).at("accepted").get<bool>());

    const fs::path cfg_q = dir / "config_q.json";
    write_config(cfg_q, Json{{"policy",
                              {{"rounds", 9000},
                               {"epsilon", 0.05},
                               {"min_accept_fraction", 0.9}}}});
    RunResult quantum = run_cli("--config " + cfg_q.string() + " message-auth --db " +
                                db.string() + " --mode quantum --amplitudes 0.6,0.8" +
                                " --out " + (dir / "transcript.json").string());
    CHECK(quantum.exit_code == 0);
    const Json verdict = Json::parse(quantum.output);
    REQUIRE(verdict.at("branch_estimates").size() == 2);
    CHECK(verdict.at("branch_estimates").at(0).get<double>() ==
          doctest::Approx(0.36).epsilon(0.15));
    CHECK(verdict.at("branch_estimates").at(1).get<double>() ==
          doctest::Approx(0.64).epsilon(0.15));
    CHECK(fs::exists(dir / "transcript.json"));
    // Transcript is valid JSON with one event per repetition.
    const Json transcript = Json::parse(read_file(dir / "transcript.json"));
    CHECK(transcript.at("events").size() == 9000);

    RunResult bad = run_cli(base + " message-auth --db " + db.string() +
                            " --mode quantum --amplitudes 1,1");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("|alpha|^2 + |beta|^2 + |gamma|^2 = 1") !=
          std::string::npos);
  }

  SUBCASE("metrics emits one summary row per metric") {
    const fs::path cfg_m = dir / "config_metrics.json";
    write_config(cfg_m, Json{{"device_count", 6},
                             {"noise_sigma_rad", 0.005},
                             {"challenge_input",
                              {{"kind", "classical_modes"}, {"modes", {0}}}},
                             {"metrics_repeats", 3}});
    const fs::path db1 = dir / "m_db1.json";
    const fs::path db2 = dir / "m_db2.json";
    REQUIRE(run_cli("--config " + cfg_m.string() + " enroll --out " +
                    db1.string()).exit_code == 0);
    REQUIRE(run_cli("--config " + cfg_m.string() + " --seed 99 enroll --out " +
                    db2.string()).exit_code == 0);

    const fs::path out = dir / "metrics.csv";
    RunResult r = run_cli("--config " + cfg_m.string() + " metrics --db " +
                          db1.string() + " --db " + db2.string() + " --out " +
                          out.string());
    REQUIRE(r.exit_code == 0);
    const std::string csv = read_file(out);
    check_csv_shape(csv);
    CHECK(csv.find("metric,mean,stddev,count") == 0);
    CHECK(csv.find("hd_intra,") != std::string::npos);
    CHECK(csv.find("hd_inter,") != std::string::npos);
    CHECK(csv.find("euclidean_inter,") != std::string::npos);
    // db2 re-enrolls the same device, so uniqueness over {db1, db2} is 0.
    CHECK(csv.find("uniqueness,0,") != std::string::npos);
  }

  SUBCASE("a 256-challenge enrollment finishes within its budget") {
    const fs::path cfg_big = dir / "config_big.json";
    write_config(cfg_big, Json{{"mesh", {{"kind", "triangular"}, {"n_modes", 8}}},
                               {"challenge_count", 256}});
    const auto start = std::chrono::steady_clock::now();
    RunResult r = run_cli("--config " + cfg_big.string() + " enroll --out " +
                          (dir / "big_db.json").string());
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    REQUIRE(r.exit_code == 0);
    CHECK(Json::parse(r.output).at("crp_count").get<int>() == 256);
    CHECK(elapsed < 10.0);
  }

  SUBCASE("age emits a flat curve without drift") {
    const fs::path db = dir / "age_db.json";
    REQUIRE(run_cli(base + " enroll --out " + db.string()).exit_code == 0);
    const fs::path out = dir / "age.csv";
    RunResult r = run_cli(base + " age --db " + db.string() +
                          " --epochs 6 --drift-sigma-rad 0 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const std::string csv = read_file(out);
    check_csv_shape(csv);
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "epoch,accept_fraction,accepted");
    int rows = 0;
    while (std::getline(ss, line)) {
      if (line.empty()) continue;
      ++rows;
      CHECK(line.find(",1,true") != std::string::npos);
    }
    CHECK(rows == 6);
  }
}
