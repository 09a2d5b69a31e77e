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

#include <istream>
#include <string>

#include "bsec/montecarlo.hpp"

namespace bsec
{

// Flat `key = value` configuration with `#` comments, mirroring the system,
// geometry, solver and sweep parameters. Every key is optional; defaults are
// the standard simulation settings. Unknown keys are rejected by name.
// Powers are given in dBm here and converted to watts on the way into the
// library.
struct RunConfig
{
    // system
    arma::uword m_tx = 3;
    arma::uword n_rx = 2;
    arma::uword l_tag = 2;
    arma::uword k_eve = 3;
    double total_power_dbm = 10.0;
    double sigma2_reader_dbm = -20.0;
    double sigma2_eve_dbm = -20.0;
    double alpha = 0.6;
    double beta = 0.3;

    // geometry
    double d_tp = 2.0;
    double d_pr = 2.0;
    double d_pe = 2.0;
    double d_te = 2.0;
    double gamma = 2.0;

    // solver
    SolverConfig solver;

    // sweep / execution
    std::string sweep_variable = "total_power_dbm";
    std::vector<double> sweep_values;
    arma::uword trials = 1000;
    std::vector<Scheme> schemes;
    std::uint64_t seed = 0;
    arma::uword threads = 1;
    std::string output = "sweep.csv";
    bool report_timing = true;
    arma::uword single_grid_points = 2001;

    static RunConfig from_file(const std::string &path); // throws contract_violation
    static RunConfig from_stream(std::istream &in, const std::string &origin);

    // Applies one `key = value` assignment; throws contract_violation naming
    // the key when it is unknown or the value does not parse.
    void set(const std::string &key, const std::string &value);

    SystemParams system_params() const;
    GeometryParams geometry_params() const;
    SweepSpec sweep_spec() const;
};

} // namespace bsec
