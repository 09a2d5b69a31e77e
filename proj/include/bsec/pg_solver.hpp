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

#include <vector>

#include <armadillo>

#include "bsec/model.hpp"

namespace bsec
{

struct SolverConfig
{
    double eps_outer = 1e-3; // relative secrecy-rate change across outer iterations
    double eps_inner = 1e-5; // relative surrogate change across inner iterations
    double mu0 = 1.0;        // initial line-search step
    double shrink = 0.5;     // backtracking shrink factor
    double delta = 0.1;      // sufficient-increase fraction
    arma::uword max_outer = 200;
    arma::uword max_inner = 2000;
    arma::uword max_backtrack = 60;

    void validate() const;
};

// Secrecy-rate maximization data in a coupling-matrix form that covers both
// the full problem and the nullspace-reduced one. The AN covariance variable
// (dimension an_dim) reaches the tag, the reader and the eavesdropper through
// g_bs, g_si and g_te; for the full problem these are the raw channels, for a
// reduced problem they are channel*basis products. The CW-side quantities
// (a_mat, b_mat) never depend on the AN variable.
struct SrmProblem
{
    arma::cx_mat h_pr; // N x L
    arma::cx_mat h_pe; // K x L
    arma::cx_mat g_bs; // L x an_dim, couples AN into the backscatter path
    arma::cx_mat g_si; // N x an_dim, couples AN into the self-interference path
    arma::cx_mat g_te; // K x an_dim, couples AN directly into the eavesdropper
    arma::cx_mat a_mat; // N x N
    arma::cx_mat b_mat; // K x K
    double alpha = 0.0;
    double beta = 0.0;
    double sigma2_r = 0.0;
    double sigma2_e = 0.0;
    double total_power = 0.0;

    static SrmProblem general(const SystemChannels &ch, const SystemParams &p);

    arma::uword an_dim() const { return g_bs.n_cols; }

    arma::cx_mat cov_reader(const Solution &x) const;
    arma::cx_mat cov_eve(const Solution &x) const;
    double rate_reader_bits(const Solution &x) const;
    double rate_eve_bits(const Solution &x) const;
    double secrecy_signed_bits(const Solution &x) const;
    double secrecy_bits(const Solution &x) const;
};

// The concave subproblem built around an anchor point: the two inverse
// interference covariances evaluated at the anchor, plus the anchor-constant
// log-det terms they contribute to the objective.
struct SurrogateContext
{
    arma::cx_mat inv_cov_reader;  // N x N, inverse of the reader covariance at the anchor
    arma::cx_mat inv_cov_eve_cw;  // K x K, inverse of (eve covariance + P_s B) at the anchor
    Solution anchor;
    double logdet_inv_terms = 0.0; // ln det of both inverses, constant in the variables
};

SurrogateContext make_surrogate_context(const SrmProblem &prob, const Solution &anchor);

// Concave surrogate objective (natural-log scale). At the anchor it equals
// ln2 * signed secrecy rate - (N + K).
double surrogate_value(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x);

struct SurrogateGradient
{
    double p_cw = 0.0;
    arma::cx_mat an_cov; // Hermitian; d(value) = Re Tr(an_cov^H dLambda) + p_cw dPs
};

SurrogateGradient surrogate_gradient(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x);

// Convenience wrappers matching the model-level types.
SurrogateContext make_surrogate_context(const SystemChannels &ch, const SystemParams &p, const Solution &anchor);
double surrogate_value(const SystemChannels &ch, const SystemParams &p, const SurrogateContext &ctx,
                       const Solution &x);
SurrogateGradient surrogate_gradient(const SystemChannels &ch, const SystemParams &p, const SurrogateContext &ctx,
                                     const Solution &x);

// Smallest nonnegative water-filling level such that the clipped entries of v
// sum to at most p_total. Exact, via the sorted-breakpoint method.
double waterfill_level(const arma::vec &v, double p_total);

// Euclidean projection onto {P_s >= 0, Lambda PSD, P_s + Tr(Lambda) <= P}:
// eigen-reduce, water-fill the joint (P_s, eigenvalue) vector, repack.
Solution project_feasible(double p_total, double p_cw_tilde, const arma::cx_mat &an_cov_tilde);

struct ArmijoResult
{
    Solution next;
    double g_next = 0.0;
    double mu_used = 0.0;
    arma::uword backtracks = 0;
    bool stalled = false; // backtracking exhausted without sufficient increase
};

// One projected-gradient ascent step with backtracking: shrink the step until
// the projected candidate clears the sufficient-increase test.
ArmijoResult armijo_step(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x, double g_x,
                         const SurrogateGradient &grad, const SolverConfig &cfg);

struct InnerResult
{
    Solution best;
    double g_best = 0.0;
    arma::uword iterations = 0;
    bool hit_cap = false;
};

// Maximizes the surrogate over the feasible set starting from a feasible
// point; the surrogate sequence is nondecreasing by construction.
InnerResult solve_inner(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &start,
                        const SolverConfig &cfg);

enum class Termination
{
    converged,
    max_outer_hit,
    max_inner_hit
};

enum class WarmStartKind
{
    none,
    nbs_an,
    nsi_an,
    carried,   // a caller-supplied solution from a related solve won the init comparison
    an_restart // the AN-dominant alternative start produced the returned run
};

struct IterateRecord
{
    arma::uword outer = 0;
    arma::uword inner_count = 0;
    double surrogate = 0.0;
    double secrecy_bits = 0.0;
};

struct SolverReport
{
    std::vector<IterateRecord> iterates; // row 0 is the starting point
    Solution final;
    double secrecy_bits = 0.0;
    Termination termination = Termination::converged;
    WarmStartKind warm_start = WarmStartKind::none;
    arma::cx_mat reduced_w;       // nullspace solves only: the optimized reduced covariance
    arma::uword total_inner = 0;
};

const char *termination_name(Termination t);
const char *warm_start_name(WarmStartKind k);

// Outer iteration: rebuild the surrogate at the previous solution, maximize it
// with the projected-gradient inner loop (warm started there), stop when the
// relative secrecy-rate change falls below eps_outer.
SolverReport solve_srm(const SrmProblem &prob, const Solution &x_init, const SolverConfig &cfg);
SolverReport solve_srm(const SystemChannels &ch, const SystemParams &p, const Solution &x_init,
                       const SolverConfig &cfg);

} // namespace bsec
