// Copyright 2026 The projent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROJENT_ERRORS_HPP
#define PROJENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace projent {

struct InvalidArgument : std::invalid_argument {
    explicit InvalidArgument(const std::string& msg) : std::invalid_argument(msg) {}
};

struct CapacityExceeded : std::runtime_error {
    explicit CapacityExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverFailure : std::runtime_error {
    explicit SolverFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateWitness : std::runtime_error {
    explicit DegenerateWitness(const std::string& msg) : std::runtime_error(msg) {}
};

struct WrongRegime : std::runtime_error {
    explicit WrongRegime(const std::string& msg) : std::runtime_error(msg) {}
};

struct DenominatorUnresolved : std::runtime_error {
    explicit DenominatorUnresolved(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace projent

#endif  // PROJENT_ERRORS_HPP
