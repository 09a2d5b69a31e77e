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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bsec/schemes.hpp"

namespace bsec
{

struct GeometryParams
{
    double d_tp = 2.0; // reader-tag distance, meters
    double d_pr = 2.0; // tag-reader distance, meters
    double d_pe = 2.0; // tag-eavesdropper distance, meters
    double d_te = 2.0; // reader-eavesdropper distance, meters
    double gamma = 2.0; // path-loss exponent

    void validate() const;
};

// Rayleigh small-scale fading with d^(-gamma/2) path loss on the four
// geometric links; the self-interference channel is unscaled. Deterministic
// given (seed, trial_index); the draw order is fixed so results never depend
// on execution order.
SystemChannels generate_channels(const SystemParams &p, const GeometryParams &g, std::uint64_t seed,
                                 std::uint64_t trial_index);

struct SweepSpec
{
    SystemParams params;
    GeometryParams geometry;
    SolverConfig solver;
    std::string swept_name = "total_power_dbm"; // one of: total_power_dbm, alpha, beta, m_tx, k_eve, d_pe
    std::vector<double> swept_values;
    arma::uword trials = 1000;
    std::vector<Scheme> schemes;
    std::uint64_t master_seed = 0;
    arma::uword threads = 1;
    bool report_timing = true;
    arma::uword single_grid_points = 2001;

    void validate() const;
    std::string canonical_string() const;
    std::uint64_t config_hash() const;
};

// Applies one swept value to a copy of the base parameters. Antenna-count
// sweeps require whole-number values.
std::pair<SystemParams, GeometryParams> apply_swept_value(const SystemParams &p, const GeometryParams &g,
                                                          const std::string &name, double value);

namespace detail
{
struct TrialCell
{
    double secrecy_bits = 0.0;
    double solve_ms = 0.0;
    bool failed = false;
};

struct Aggregate
{
    double mean_cs = 0.0;
    double stderr_cs = 0.0;
    double mean_ms = 0.0;
    arma::uword failures = 0;
};

// Reduction in trial-index order; failed trials are excluded and counted.
Aggregate aggregate_cells(const std::vector<TrialCell> &cells);
} // namespace detail

struct SweepRow
{
    Scheme scheme = Scheme::no_an;
    double swept_value = 0.0;
    double mean_cs = 0.0;
    double stderr_cs = 0.0;
    arma::uword trials = 0;
    arma::uword failures = 0;
    double mean_solve_ms = 0.0;
    bool degraded = false; // more than 1% of trials failed
};

struct SweepResult
{
    std::vector<SweepRow> rows; // scheme-major, then swept value in the given order
    std::string swept_name;
    std::uint64_t master_seed = 0;
    std::uint64_t config_hash = 0;
    bool report_timing = true;
};

SweepResult run_sweep(const SweepSpec &spec);

// The exact CSV text (header included, '\n' line endings). With
// report_timing disabled the timing column is written as 0 and the text is
// byte-identical across reruns and worker counts.
std::string sweep_csv(const SweepResult &result);

} // namespace bsec
