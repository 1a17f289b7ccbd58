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

#ifndef OPTPUF_SERIALIZE_HPP
#define OPTPUF_SERIALIZE_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "optpuf/device.hpp"
#include "optpuf/photonic.hpp"

// JSON bindings for the on-disk formats. Complex numbers are stored as
// explicit {"re": ..., "im": ...} objects; doubles round-trip losslessly
// through the serializer's shortest-exact decimal form. Field grammar is
// documented in docs/file-formats.md.

namespace optpuf {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedVersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const MatrixXcd& m);
MatrixXcd matrix_from_json(const Json& j);

Json vector_to_json(const VectorXcd& v);
VectorXcd vector_from_json(const Json& j);

void to_json(Json& j, const MziPlacement& p);
void from_json(const Json& j, MziPlacement& p);

void to_json(Json& j, const MeshTopology& t);
void from_json(const Json& j, MeshTopology& t);

void to_json(Json& j, const PhaseSettings& s);
void from_json(const Json& j, PhaseSettings& s);

void to_json(Json& j, const InputSpec& s);
void from_json(const Json& j, InputSpec& s);

void to_json(Json& j, const Challenge& c);
void from_json(const Json& j, Challenge& c);

void to_json(Json& j, const IntensityHistogram& h);
void from_json(const Json& j, IntensityHistogram& h);

void to_json(Json& j, const PufDevice& d);
void from_json(const Json& j, PufDevice& d);

// Parses with wrapped errors: any malformed content surfaces as ParseError
// with the offending file and context in the message.
Json load_json_file(const std::filesystem::path& path);

// Atomic write: temp file in the target directory, then rename.
void write_text_file_atomic(const std::filesystem::path& path,
                            const std::string& content);

// Device descriptors are versioned files so experiments replay bit-exactly.
inline constexpr int kDeviceFormatVersion = 1;
void save_device(const PufDevice& d, const std::filesystem::path& path);
PufDevice load_device(const std::filesystem::path& path);

}  // namespace optpuf

#endif  // OPTPUF_SERIALIZE_HPP
