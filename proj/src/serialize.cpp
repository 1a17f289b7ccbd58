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

#include "optpuf/serialize.hpp"

#include <fstream>
#include <system_error>

namespace optpuf {

Json complex_to_json(const Complex& z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const Json& j) {
  return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

Json matrix_to_json(const MatrixXcd& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      entries.push_back(complex_to_json(m(r, c)));
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

MatrixXcd matrix_from_json(const Json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto& entries = j.at("entries");
  if (rows < 0 || cols < 0 ||
      entries.size() != static_cast<std::size_t>(rows * cols)) {
    throw ParseError("matrix entries length does not match rows*cols");
  }
  MatrixXcd m(rows, cols);
  std::size_t k = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(entries.at(k++));
    }
  }
  return m;
}

Json vector_to_json(const VectorXcd& v) {
  Json entries = Json::array();
  for (Index i = 0; i < v.size(); ++i) entries.push_back(complex_to_json(v(i)));
  return entries;
}

VectorXcd vector_from_json(const Json& j) {
  VectorXcd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = complex_from_json(j.at(i));
  }
  return v;
}

void to_json(Json& j, const MziPlacement& p) {
  j = Json{{"layer", p.layer}, {"mode", p.mode}};
}

void from_json(const Json& j, MziPlacement& p) {
  j.at("layer").get_to(p.layer);
  j.at("mode").get_to(p.mode);
}

void to_json(Json& j, const MeshTopology& t) {
  j = Json{{"n_modes", t.n_modes}, {"mzi_placements", t.placements}};
}

void from_json(const Json& j, MeshTopology& t) {
  j.at("n_modes").get_to(t.n_modes);
  j.at("mzi_placements").get_to(t.placements);
  t.validate();
}

void to_json(Json& j, const PhaseSettings& s) {
  Json theta = Json::array();
  Json phi = Json::array();
  for (const auto& v : s.values) {
    theta.push_back(v.theta);
    phi.push_back(v.phi);
  }
  j = Json{{"theta_rad", theta}, {"phi_rad", phi}};
}

void from_json(const Json& j, PhaseSettings& s) {
  const auto& theta = j.at("theta_rad");
  const auto& phi = j.at("phi_rad");
  if (theta.size() != phi.size()) {
    throw ParseError("theta_rad and phi_rad lengths differ");
  }
  s.values.clear();
  s.values.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    s.values.push_back({theta.at(i).get<double>(), phi.at(i).get<double>()});
  }
}

namespace {

std::string input_kind_name(InputSpec::Kind kind) {
  switch (kind) {
    case InputSpec::Kind::kClassicalModes: return "classical_modes";
    case InputSpec::Kind::kDualRail: return "dual_rail";
    case InputSpec::Kind::kFullState: return "full_state";
  }
  throw std::logic_error("unreachable input kind");
}

InputSpec::Kind input_kind_from_name(const std::string& name) {
  if (name == "classical_modes") return InputSpec::Kind::kClassicalModes;
  if (name == "dual_rail") return InputSpec::Kind::kDualRail;
  if (name == "full_state") return InputSpec::Kind::kFullState;
  throw ParseError("unknown input kind: " + name);
}

}  // namespace

void to_json(Json& j, const InputSpec& s) {
  j = Json{{"kind", input_kind_name(s.kind)}, {"modes", s.modes}};
}

void from_json(const Json& j, InputSpec& s) {
  s.kind = input_kind_from_name(j.at("kind").get<std::string>());
  j.at("modes").get_to(s.modes);
}

void to_json(Json& j, const Challenge& c) {
  j = Json{{"challenge_id", c.challenge_id},
           {"settings", c.settings},
           {"input", c.input}};
}

void from_json(const Json& j, Challenge& c) {
  j.at("challenge_id").get_to(c.challenge_id);
  j.at("settings").get_to(c.settings);
  j.at("input").get_to(c.input);
}

void to_json(Json& j, const IntensityHistogram& h) {
  Json bins = Json::array();
  for (Index i = 0; i < h.bins.size(); ++i) bins.push_back(h.bins(i));
  j = Json{{"bins", bins}, {"shots", h.shots}};
}

void from_json(const Json& j, IntensityHistogram& h) {
  const auto& bins = j.at("bins");
  h.bins = VectorXd(static_cast<Index>(bins.size()));
  for (std::size_t i = 0; i < bins.size(); ++i) {
    h.bins(static_cast<Index>(i)) = bins.at(i).get<double>();
  }
  j.at("shots").get_to(h.shots);
}

void to_json(Json& j, const PufDevice& d) {
  Json fingerprint_theta = Json::array();
  Json fingerprint_phi = Json::array();
  for (const auto& f : d.fingerprint) {
    fingerprint_theta.push_back(f.theta);
    fingerprint_phi.push_back(f.phi);
  }
  Json loss = Json::array();
  for (Index i = 0; i < d.loss.size(); ++i) loss.push_back(d.loss(i));
  Json coupling = Json::array();
  for (Index i = 0; i < d.coupling.size(); ++i) coupling.push_back(d.coupling(i));
  j = Json{{"format_version", kDeviceFormatVersion},
           {"topology", d.topology},
           {"fingerprint_theta_rad", fingerprint_theta},
           {"fingerprint_phi_rad", fingerprint_phi},
           {"loss", loss},
           {"coupling", coupling},
           {"noise_sigma_rad", d.noise_sigma},
           {"age_epochs", d.age_epochs},
           {"device_seed", d.device_seed}};
}

void from_json(const Json& j, PufDevice& d) {
  const int version = j.at("format_version").get<int>();
  if (version != kDeviceFormatVersion) {
    throw UnsupportedVersionError("device format version " +
                                  std::to_string(version) + " not supported");
  }
  j.at("topology").get_to(d.topology);
  const auto& ft = j.at("fingerprint_theta_rad");
  const auto& fp = j.at("fingerprint_phi_rad");
  if (ft.size() != fp.size()) throw ParseError("fingerprint array lengths differ");
  d.fingerprint.clear();
  for (std::size_t i = 0; i < ft.size(); ++i) {
    d.fingerprint.push_back({ft.at(i).get<double>(), fp.at(i).get<double>()});
  }
  const auto& loss = j.at("loss");
  d.loss = VectorXd(static_cast<Index>(loss.size()));
  for (std::size_t i = 0; i < loss.size(); ++i) {
    d.loss(static_cast<Index>(i)) = loss.at(i).get<double>();
  }
  const auto& coupling = j.at("coupling");
  d.coupling = VectorXd(static_cast<Index>(coupling.size()));
  for (std::size_t i = 0; i < coupling.size(); ++i) {
    d.coupling(static_cast<Index>(i)) = coupling.at(i).get<double>();
  }
  j.at("noise_sigma_rad").get_to(d.noise_sigma);
  j.at("age_epochs").get_to(d.age_epochs);
  j.at("device_seed").get_to(d.device_seed);
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open file: " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("parse error in " + path.string() + ": " + e.what());
  }
}

void write_text_file_atomic(const std::filesystem::path& path,
                            const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for write: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("atomic rename failed for " + path.string() + ": " +
                             ec.message());
  }
}

void save_device(const PufDevice& d, const std::filesystem::path& path) {
  Json j = d;
  write_text_file_atomic(path, j.dump(2) + "\n");
}

PufDevice load_device(const std::filesystem::path& path) {
  try {
    return load_json_file(path).get<PufDevice>();
  } catch (const Json::exception& e) {
    throw ParseError("malformed device file " + path.string() + ": " + e.what());
  }
}

}  // namespace optpuf
