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

#include "bsec/pg_solver.hpp"

namespace bsec
{

enum class NullspaceKind
{
    no_backscatter,       // AN restricted to the nullspace of the reader-to-tag channel
    no_self_interference, // AN restricted to the nullspace of the self-interference channel
};

const char *nullspace_kind_name(NullspaceKind kind);

struct NullspaceBasis
{
    arma::cx_mat v_basis; // M x r, orthonormal columns spanning the target nullspace
    NullspaceKind kind = NullspaceKind::no_backscatter;
};

// Trailing right singular vectors of the channel being nulled, taken by index
// (random channels have full row rank); a residual assertion guards
// pathological inputs. Requires M > L (no_backscatter) or M > N
// (no_self_interference).
NullspaceBasis nullspace_basis(const SystemChannels &ch, NullspaceKind kind);

// The reduced problem over (P_s, W): identical machinery with the coupling
// channels multiplied by the basis; the CW-side quantities are untouched.
SrmProblem make_reduced_problem(const SystemChannels &ch, const SystemParams &p, const NullspaceBasis &basis);

// Solves the reduced problem and reconstructs the full-size AN covariance in
// the returned report (the optimized reduced covariance is kept in
// report.reduced_w). init_reduced, when given, competes with the default
// full-CW-power start and is used only if feasible and better.
SolverReport solve_srm_nullspace(const SystemChannels &ch, const SystemParams &p, NullspaceKind kind,
                                 const SolverConfig &cfg, const Solution *init_reduced = nullptr);

// General AN design warm-started from the better of the two nullspace
// solutions (whichever schemes the geometry allows; falls back to full CW
// power otherwise). extra_init, when given, also competes.
SolverReport solve_srm_warmstarted(const SystemChannels &ch, const SystemParams &p, const SolverConfig &cfg,
                                   const Solution *extra_init = nullptr);

} // namespace bsec
