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

#include <string>
#include <vector>

#include "bsec/montecarlo.hpp"
#include "bsec/single_tag.hpp"

// Independent oracles for the library's numerics: brute-force searches,
// bisection, finite differences and alternative algebraic constructions.
// Everything here stays off the implementation paths it checks; the
// `validate` CLI command and the test suites both run through this module.
namespace bsec::validation
{

// --- generic oracles -------------------------------------------------------

// Water-filling level by bisection on the monotone clipped-sum function.
double waterfill_bisection(const arma::vec &v, double p_total);

// Central finite differences of the surrogate, assembled into the same
// Hermitian-representer convention as the analytic gradient.
SurrogateGradient finite_difference_gradient(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x,
                                             double step);

// The subproblem objective built from the first-order Taylor bound instead of
// the closed-form trace terms; differs from surrogate_value only by an
// anchor constant.
double spca_surrogate_value(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x);

// Gradient of the Taylor-form objective, assembled by a separate route: the
// linear terms by elementwise evaluation (no derivative formulas at all) and
// the log-det part with general inverses and explicit per-antenna loops.
SurrogateGradient spca_surrogate_gradient(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x);

// --- single-antenna-tag oracles --------------------------------------------

// Maximal |d2^H v|^2 subject to |d1^H v|^2 = t by dense phase search in the
// span{d1, d2} plane.
double r_of_t_bruteforce(const TCoordinates &tc, double t, arma::uword angle_steps);

struct GridBest
{
    double y = 1.0;
    double t = 0.0;
    double p_s = 0.0;
};

// Dense (t, P_s) grid over the true SINR-ratio objective evaluated through
// the AN direction v(t) and explicit quadratic forms.
GridBest single_tag_grid(const SingleTagInstance &inst, arma::uword nt, arma::uword nps);

// Same search with `rounds` extra grid passes zoomed into a window around the
// incumbent best; resolves the narrow near-zero t peak that a single uniform
// grid cannot.
GridBest single_tag_grid_refined(const SingleTagInstance &inst, arma::uword nt, arma::uword nps, arma::uword rounds);

// MRC eavesdropper rate and the matched-filter reader rate evaluated directly
// from the instance matrices and a concrete AN covariance.
double mrc_eve_rate_direct(const SingleTagInstance &inst, const Solution &s);
double zf_reader_rate_direct(const SingleTagInstance &inst, const Solution &s);

// d/dP_s of the fixed-t objective, from the quotient rule (no root formulas).
double ps_objective_derivative(const PsObjective &f, double p_s);

// --- instance generators (deterministic) -----------------------------------

SystemChannels random_channels(const SystemParams &p, std::uint64_t seed);
Solution random_feasible(arma::uword dim, double total_power, std::uint64_t seed, double min_trace_fraction = 0.2);
arma::cx_mat random_hermitian(arma::uword dim, double scale, std::uint64_t seed);

// --- check suites (shared by tests and the validate CLI command) -----------

struct Check
{
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult
{
    std::string suite;
    std::vector<Check> checks;
    bool all_passed() const;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string &name, std::uint64_t seed);

} // namespace bsec::validation
