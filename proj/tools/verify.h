// Copyright 2026 The Telecloning Authors
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

#ifndef TELECLONING_TOOLS_VERIFY_H
#define TELECLONING_TOOLS_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

/// End-to-end invariant groups behind `teleclone verify`.
namespace telecloning::verify {

struct Options {
    std::uint64_t seed = 1;
    /// Builds the channel-norm group's channels with the unnormalized scale.
    bool inject_wrong_prefactor = false;
    unsigned jobs = 1;
};

struct GroupResult {
    std::string name;
    bool passed = false;
    std::size_t checks = 0;
    std::size_t failures = 0;
    /// Largest deviation seen, in the group's own units.
    double max_error = 0;
    std::string message;
};

/// Group names in execution order.
const std::vector<std::string> &group_names();
bool is_group(const std::string &name);

/// Throws std::invalid_argument on an unknown name.
GroupResult run_group(const std::string &name, const Options &options);

nlohmann::json to_json(const std::vector<GroupResult> &results);

}  // namespace telecloning::verify

#endif
