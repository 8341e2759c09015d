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
 * @file errors.hpp
 * Exception types shared by every module. Each carries a short category
 * string so the CLI can print a machine-parsable one-line error.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace sqm {

/// Violated precondition: wrong shapes, out-of-range indices, stale tapes.
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Malformed or physically invalid input data (non-positive gains, corrupt
/// files).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Request exceeds a simulator capacity guard.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Filesystem failures. The message always names the offending path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline const char *error_category(const std::exception &e) noexcept {
    if (dynamic_cast<const ContractError *>(&e) != nullptr) {
        return "contract";
    }
    if (dynamic_cast<const DataError *>(&e) != nullptr) {
        return "data";
    }
    if (dynamic_cast<const CapacityError *>(&e) != nullptr) {
        return "capacity";
    }
    if (dynamic_cast<const IoError *>(&e) != nullptr) {
        return "io";
    }
    return "internal";
}

namespace detail {
inline void require(bool cond, const std::string &what) {
    if (!cond) {
        throw ContractError(what);
    }
}
} // namespace detail

} // namespace sqm
