// Copyright 2026 The sqmgnn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file io.hpp
 * Small file helpers: little-endian float64 blobs and whole-file text IO.
 */
#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sqm/errors.hpp"

namespace sqm::io {

namespace fs = std::filesystem;
using nlohmann::json;

inline void append_f64_le(std::string &out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<char>(bits & 0xFFU));
        bits >>= 8;
    }
}

inline double read_f64_le(const char *p) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) {
        bits = (bits << 8) | static_cast<unsigned char>(p[b]);
    }
    return std::bit_cast<double>(bits);
}

inline std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const fs::path &path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

inline void write_f64_blob(const fs::path &path, std::span<const double> values) {
    std::string buf;
    buf.reserve(values.size() * 8);
    for (double v : values) {
        append_f64_le(buf, v);
    }
    write_file(path, buf);
}

inline std::vector<double> read_f64_blob(const fs::path &path) {
    const std::string raw = read_file(path);
    if (raw.size() % 8 != 0) {
        throw DataError(path.string() + ": size " + std::to_string(raw.size()) +
                        " is not a multiple of 8 bytes");
    }
    std::vector<double> out(raw.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = read_f64_le(raw.data() + 8 * i);
    }
    return out;
}

inline json read_json(const fs::path &path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

inline void write_json(const fs::path &path, const json &j) {
    write_file(path, j.dump(2) + "\n");
}

/// Blob path paired with a JSON manifest: foo.json -> foo.bin.
inline fs::path blob_path_for(const fs::path &manifest) {
    fs::path p = manifest;
    p.replace_extension(".bin");
    return p;
}

} // namespace sqm::io
