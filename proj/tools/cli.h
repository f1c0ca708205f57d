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

#ifndef TELECLONING_TOOLS_CLI_H
#define TELECLONING_TOOLS_CLI_H

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "telecloning/qstate.h"

/// Command-line front end: run, sweep-delta, sweep-fidelity, mixed, verify.
namespace telecloning::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, input specs or output paths; maps to kExitUsage.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Comma-separated amplitudes; each entry is real ("0.5"), imaginary
/// ("0.5i") or complex ("0.3-0.4i"). "j" is accepted in place of "i".
std::vector<Complex> parse_amplitudes(const std::string &text);

/// Input state from a preset ("bell", "ghz", "random", "basis-k") or an
/// amplitude list. Lists off by more than 1e-6 in norm are rejected; closer
/// ones are renormalized.
StateVector parse_input(const std::string &spec, std::size_t n, std::uint64_t seed);

/// TELECLONE_JOBS, or 1 when unset.
unsigned default_jobs();

/// Runs one command line (without the program name) and returns the exit code.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int main(int argc, char **argv);

}  // namespace telecloning::cli

#endif
