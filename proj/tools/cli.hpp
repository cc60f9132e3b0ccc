// Copyright 2026 The Qompress Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qompress/mcz.hpp"

namespace qompress::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). Everything goes
/// to `out` / `err`; nothing else touches global state except reading the
/// QOMPRESS_SEED environment variable.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// One line of `qompress reproduce`.
struct Claim {
    std::string id;
    std::string description;
    std::string expected;
    std::string computed;
    bool pass;
};

struct ReproduceOptions {
    BsmModel model = BsmModel::linear_optics();
    std::uint64_t seed = 0;
};

/// Evaluates every claim; used by `qompress reproduce`.
std::vector<Claim> reproduce_claims(const ReproduceOptions &options);

}  // namespace qompress::cli
