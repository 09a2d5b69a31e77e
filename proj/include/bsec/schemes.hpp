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

#include <optional>
#include <string>

#include "bsec/nullspace.hpp"
#include "bsec/single_tag.hpp"

namespace bsec
{

enum class Scheme
{
    general,          // joint (P_s, Lambda_z) design, nullspace warm started
    nbs_an,           // AN in the nullspace of the reader-to-tag channel
    nsi_an,           // AN in the nullspace of the self-interference channel
    no_an,            // all power on the CW, no optimization
    single_optimal,   // single-antenna-tag global solver
    single_nullspace, // single-antenna-tag, AN orthogonal to the tag channel
};

const char *scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string &name);

// Throws contract_violation naming the violated requirement (antenna-count
// preconditions for nullspace schemes, L = 1 and beta = 0 for the
// single-antenna-tag schemes).
void check_scheme_compatible(Scheme s, const SystemParams &p);

struct SchemeResult
{
    Solution solution;            // in the full M x M variable space
    double secrecy_bits = 0.0;
    arma::uword outer_iterations = 0;
    arma::uword inner_iterations = 0;
    WarmStartKind warm_start = WarmStartKind::none;
    Solution carry_state;         // scheme-space solution, reusable as a warm start for a related solve
};

// carry, when given, is a previous carry_state from the same scheme (used as
// an extra warm-start candidate if dimensions and feasibility allow).
SchemeResult run_scheme(Scheme s, const SystemChannels &ch, const SystemParams &p, const SolverConfig &cfg,
                        const Solution *carry = nullptr, arma::uword single_grid_points = 2001);

} // namespace bsec
