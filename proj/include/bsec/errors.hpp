// bsec - artificial-noise precoding and secrecy-rate optimization for MIMO backscatter links
// Copyright (C) 2026 the bsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace bsec
{

// Violated precondition or malformed input (bad dimensions, infeasible
// parameters, unparseable config). Maps to CLI exit code 2.
struct contract_violation : std::invalid_argument
{
    explicit contract_violation(const std::string &msg) : std::invalid_argument(msg) {}
};

// A requested scheme cannot run on the given antenna geometry.
struct unsupported_configuration : contract_violation
{
    explicit unsupported_configuration(const std::string &msg) : contract_violation(msg) {}
};

// Finite-arithmetic failure (singular factorization, non-finite result).
// Maps to CLI exit code 3.
struct numerical_error : std::runtime_error
{
    explicit numerical_error(const std::string &msg) : std::runtime_error(msg) {}
};

// The reader-tag direction and the effective eavesdropper direction coincide
// (kappa == 1); the rank-one AN closed forms are undefined there.
struct degenerate_alignment : numerical_error
{
    explicit degenerate_alignment(const std::string &msg) : numerical_error(msg) {}
};

} // namespace bsec
