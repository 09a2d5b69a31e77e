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

#include <catch2/catch_amalgamated.hpp>

#include "bsec/linalg.hpp"
#include "bsec/nullspace.hpp"
#include "bsec/pg_solver.hpp"
#include "bsec/validation.hpp"

using namespace bsec;

namespace
{
Solution full_cw(const SrmProblem &prob)
{
    Solution s;
    s.p_cw = prob.total_power;
    s.an_cov = arma::cx_mat(prob.an_dim(), prob.an_dim(), arma::fill::zeros);
    return s;
}

// unit-scale 1x1 instance with an interior subproblem optimum (the power
// budget is slack at the maximizer) and gentle curvature
SrmProblem scalar_problem()
{
    SystemParams p;
    p.m_tx = p.n_rx = p.l_tag = p.k_eve = 1;
    p.total_power = 2.0;
    p.sigma2_reader = p.sigma2_eve = 1.0;
    p.alpha = 0.5;
    p.beta = 0.2;
    SystemChannels ch;
    ch.h_reader_to_tag = arma::cx_mat(1, 1, arma::fill::ones);
    ch.h_tag_to_reader = arma::cx_mat(1, 1, arma::fill::ones);
    ch.h_self_interference = arma::cx_mat(1, 1, arma::fill::ones);
    ch.h_tag_to_eve = 0.9 * arma::cx_mat(1, 1, arma::fill::ones);
    ch.h_reader_to_eve = 0.7 * arma::cx_mat(1, 1, arma::fill::ones);
    return SrmProblem::general(ch, p);
}

// scalar re-implementation of the surrogate for the 1x1 instance
double scalar_surrogate(const SrmProblem &prob, const SurrogateContext &ctx, double ps, double lam)
{
    const double g_bs2 = std::norm(prob.g_bs(0, 0));
    const double g_si2 = std::norm(prob.g_si(0, 0));
    const double g_te2 = std::norm(prob.g_te(0, 0));
    const double h_pr2 = std::norm(prob.h_pr(0, 0));
    const double h_pe2 = std::norm(prob.h_pe(0, 0));
    const double a = std::real(prob.a_mat(0, 0));
    const double b = std::real(prob.b_mat(0, 0));
    const double rr = prob.alpha * h_pr2 * g_bs2 * lam + prob.beta * g_si2 * lam + prob.sigma2_r;
    const double re = h_pe2 * g_bs2 * lam + g_te2 * lam + prob.sigma2_e;
    const double s0 = std::real(ctx.inv_cov_reader(0, 0));
    const double s1 = std::real(ctx.inv_cov_eve_cw(0, 0));
    return std::log(rr + ps * a) + std::log(re) - s0 * rr - s1 * (re + ps * b) + std::log(s0) + std::log(s1);
}
} // namespace

TEST_CASE("zero gradient stalls the line search at the same iterate")
{
    const SrmProblem prob = scalar_problem();
    const Solution x = validation::random_feasible(1, prob.total_power, 1);
    const SurrogateContext ctx = make_surrogate_context(prob, x);
    const double gx = surrogate_value(prob, ctx, x);

    SurrogateGradient zero;
    zero.p_cw = 0.0;
    zero.an_cov = arma::cx_mat(1, 1, arma::fill::zeros);
    const ArmijoResult res = armijo_step(prob, ctx, x, gx, zero, SolverConfig{});
    REQUIRE(res.stalled);
    REQUIRE(res.backtracks == SolverConfig{}.max_backtrack);
    REQUIRE(std::abs(res.next.p_cw - x.p_cw) == 0.0);
}

TEST_CASE("interior step with gentle curvature is accepted at the initial step size")
{
    const SrmProblem prob = scalar_problem();
    const SolverConfig cfg;

    // near-optimal interior point: gradient small, projection stays identity
    Solution x;
    x.p_cw = 0.5;
    x.an_cov = arma::cx_mat(1, 1);
    x.an_cov(0, 0) = 0.1;
    const SurrogateContext ctx = make_surrogate_context(prob, x);
    SolverConfig precise = cfg;
    precise.eps_inner = 1e-12;
    precise.max_inner = 20000;
    const InnerResult warm = solve_inner(prob, ctx, x, precise);
    REQUIRE(warm.best.power_used() < 0.95 * prob.total_power); // budget slack at the optimum
    Solution near = warm.best;
    near.p_cw = std::max(0.0, near.p_cw - 0.02); // nudge off the optimum, stay interior
    const double g_near = surrogate_value(prob, ctx, near);

    const SurrogateGradient grad = surrogate_gradient(prob, ctx, near);
    const ArmijoResult step = armijo_step(prob, ctx, near, g_near, grad, cfg);
    REQUIRE_FALSE(step.stalled);
    REQUIRE(step.backtracks == 0);
    REQUIRE(step.mu_used == cfg.mu0);

    // projection was the identity: the candidate is exactly x + mu0 * grad
    REQUIRE(std::abs(step.next.p_cw - (near.p_cw + cfg.mu0 * grad.p_cw)) < 1e-12);
    REQUIRE(arma::norm(step.next.an_cov - (near.an_cov + cfg.mu0 * grad.an_cov), "fro") < 1e-12);

    // accepted value agrees with an independent scalar evaluation
    const double g_scalar =
        scalar_surrogate(prob, ctx, step.next.p_cw, std::real(step.next.an_cov(0, 0)));
    REQUIRE(std::abs(step.g_next - g_scalar) < 1e-12);
    REQUIRE(step.g_next > g_near);
}

TEST_CASE("every accepted step strictly increases the surrogate")
{
    SystemParams p;
    const SystemChannels ch = validation::random_channels(p, 5);
    const SrmProblem prob = SrmProblem::general(ch, p);
    Solution x = full_cw(prob);
    const SurrogateContext ctx = make_surrogate_context(prob, x);
    const SolverConfig cfg;

    double g = surrogate_value(prob, ctx, x);
    for (int k = 0; k < 30; ++k)
    {
        const SurrogateGradient grad = surrogate_gradient(prob, ctx, x);
        const ArmijoResult step = armijo_step(prob, ctx, x, g, grad, cfg);
        if (step.stalled)
            break;
        REQUIRE(step.g_next > g);
        REQUIRE_NOTHROW(step.next.validate(prob.total_power)); // feasibility at every iterate
        x = step.next;
        g = step.g_next;
    }
}

TEST_CASE("zero power budget collapses to the singleton feasible point")
{
    SystemParams p;
    p.total_power = 0.0;
    const SystemChannels ch = validation::random_channels(p, 8);
    const SrmProblem prob = SrmProblem::general(ch, p);
    const Solution zero = full_cw(prob);
    const SurrogateContext ctx = make_surrogate_context(prob, zero);

    const InnerResult res = solve_inner(prob, ctx, zero, SolverConfig{});
    REQUIRE(res.iterations <= 1);
    REQUIRE(res.best.p_cw == 0.0);
    REQUIRE(arma::norm(res.best.an_cov, "fro") == 0.0);
}

TEST_CASE("without an eavesdropper the solver keeps all power on the CW")
{
    SystemParams p;
    SystemChannels ch = validation::random_channels(p, 9);
    ch.h_tag_to_eve.zeros();
    ch.h_reader_to_eve.zeros();
    const SrmProblem prob = SrmProblem::general(ch, p);

    // the no-AN point is already optimal; the inner loop must not wander off
    const Solution start = full_cw(prob);
    const SurrogateContext ctx = make_surrogate_context(prob, start);
    const InnerResult inner = solve_inner(prob, ctx, start, SolverConfig{});
    REQUIRE(std::real(arma::trace(inner.best.an_cov)) <= 1e-3 * p.total_power);

    // and a full solve from a spread-out start drives the AN power to zero
    SolverConfig tight;
    tight.eps_outer = 1e-6;
    tight.eps_inner = 1e-8;
    Solution spread;
    spread.p_cw = 0.5 * p.total_power;
    spread.an_cov = (0.5 * p.total_power / double(p.m_tx)) * arma::cx_mat(p.m_tx, p.m_tx, arma::fill::eye);
    const SolverReport rep = solve_srm(prob, spread, tight);
    REQUIRE(std::real(arma::trace(rep.final.an_cov)) <= 1e-3 * p.total_power);
    REQUIRE(std::abs(rep.secrecy_bits - prob.secrecy_bits(full_cw(prob))) < 1e-3);
}

TEST_CASE("inner solver reaches the dense-grid optimum on a small instance")
{
    SystemParams p;
    p.m_tx = 2;
    p.n_rx = p.l_tag = p.k_eve = 1;
    p.total_power = 2.0;
    p.sigma2_reader = p.sigma2_eve = 1.0;
    p.alpha = 0.7;
    p.beta = 0.4;
    const SystemChannels ch = validation::random_channels(p, 12);
    const SrmProblem prob = SrmProblem::general(ch, p);

    const SurrogateContext ctx = make_surrogate_context(prob, full_cw(prob));
    SolverConfig cfg;
    cfg.eps_inner = 1e-9;
    const InnerResult inner = solve_inner(prob, ctx, full_cw(prob), cfg);

    // feasibility-filtered grid over (ps, diag, complex off-diagonal)
    double best = -arma::datum::inf;
    const int n = 15;
    for (int ips = 0; ips <= n; ++ips)
    {
        const double ps = p.total_power * ips / n;
        for (int ia = 0; ia <= n; ++ia)
        {
            const double a = p.total_power * ia / n;
            if (ps + a > p.total_power)
                break;
            for (int id = 0; id <= n; ++id)
            {
                const double d = p.total_power * id / n;
                if (ps + a + d > p.total_power)
                    break;
                for (int ir = -n / 2; ir <= n / 2; ++ir)
                {
                    const double zr = p.total_power * ir / n;
                    for (int ii = -n / 2; ii <= n / 2; ++ii)
                    {
                        const double zi = p.total_power * ii / n;
                        if (zr * zr + zi * zi > a * d)
                            continue;
                        Solution s;
                        s.p_cw = ps;
                        s.an_cov = arma::cx_mat(2, 2);
                        s.an_cov(0, 0) = a;
                        s.an_cov(1, 1) = d;
                        s.an_cov(0, 1) = std::complex<double>(zr, zi);
                        s.an_cov(1, 0) = std::complex<double>(zr, -zi);
                        best = std::max(best, surrogate_value(prob, ctx, s));
                    }
                }
            }
        }
    }
    REQUIRE(inner.g_best >= best - 1e-3 * std::abs(best));
    REQUIRE(std::abs(inner.g_best - best) <= 2e-2 * std::abs(best)); // grid is coarse
}

TEST_CASE("full solve without eavesdropper channels recovers the no-AN rate")
{
    SystemParams p;
    SystemChannels ch = validation::random_channels(p, 21);
    ch.h_tag_to_eve.zeros();
    ch.h_reader_to_eve.zeros();
    const SrmProblem prob = SrmProblem::general(ch, p);
    const SolverReport rep = solve_srm(prob, full_cw(prob), SolverConfig{});
    REQUIRE(std::abs(rep.secrecy_bits - prob.secrecy_bits(full_cw(prob))) < 1e-6);
}

TEST_CASE("symmetric reader and eavesdropper always give zero secrecy")
{
    // identical tag-side channels, no direct eve path, full backscatter AN at
    // the reader and no self-interference: both covariances coincide
    SystemParams p;
    p.m_tx = 2;
    p.n_rx = p.k_eve = 2;
    p.l_tag = 2;
    p.alpha = 1.0;
    p.beta = 0.0;
    SystemChannels ch = validation::random_channels(p, 33);
    ch.h_tag_to_eve = ch.h_tag_to_reader;
    ch.h_reader_to_eve.zeros();
    p.sigma2_eve = p.sigma2_reader;
    const SrmProblem prob = SrmProblem::general(ch, p);

    const SolverReport rep = solve_srm(prob, full_cw(prob), SolverConfig{});
    REQUIRE(rep.secrecy_bits == 0.0);
    for (const IterateRecord &it : rep.iterates)
        REQUIRE(it.secrecy_bits >= 0.0);
}

TEST_CASE("outer secrecy trace is nondecreasing and the final point is feasible")
{
    SystemParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed + 70);
        const SolverReport rep = solve_srm_warmstarted(ch, p, SolverConfig{});
        REQUIRE(!rep.iterates.empty());
        for (std::size_t k = 1; k < rep.iterates.size(); ++k)
            REQUIRE(rep.iterates[k].secrecy_bits >= rep.iterates[k - 1].secrecy_bits - 1e-9);
        REQUIRE_NOTHROW(rep.final.validate(p.total_power));
        REQUIRE(rep.iterates.back().outer < SolverConfig{}.max_outer);
    }
}

TEST_CASE("warm-started general design dominates the no-AN point")
{
    SystemParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed + 90);
        const SrmProblem prob = SrmProblem::general(ch, p);
        const SolverReport rep = solve_srm_warmstarted(ch, p, SolverConfig{});
        REQUIRE(rep.secrecy_bits >= prob.secrecy_bits(full_cw(prob)) - 1e-9);
    }
}

TEST_CASE("terminated points are first-order stationary within the feasible set")
{
    // observable consequence of convergence to a KKT point: the surrogate
    // gradient at the final iterate lies almost entirely in the normal cone,
    // so a full projected-gradient step barely moves, and a much tighter
    // solve does not find a better rate
    SystemParams p;
    SolverConfig tight;
    tight.eps_outer = 1e-8;
    tight.eps_inner = 1e-10;
    tight.max_outer = 2000;
    tight.max_inner = 50000;
    SolverConfig tighter = tight;
    tighter.eps_outer = 1e-11;
    tighter.eps_inner = 1e-13;
    for (std::uint64_t seed = 0; seed < 3; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed + 110);
        const SrmProblem prob = SrmProblem::general(ch, p);
        const SolverReport rep = solve_srm_warmstarted(ch, p, tight);

        const SurrogateContext ctx = make_surrogate_context(prob, rep.final);
        const SurrogateGradient grad = surrogate_gradient(prob, ctx, rep.final);
        const Solution moved =
            project_feasible(prob.total_power, rep.final.p_cw + tight.mu0 * grad.p_cw,
                             rep.final.an_cov + tight.mu0 * grad.an_cov);
        const double residual = std::sqrt(std::pow(moved.p_cw - rep.final.p_cw, 2) +
                                          std::pow(arma::norm(moved.an_cov - rep.final.an_cov, "fro"), 2));
        const double grad_norm =
            std::sqrt(grad.p_cw * grad.p_cw + std::pow(arma::norm(grad.an_cov, "fro"), 2));
        REQUIRE(residual <= 1e-5 * tight.mu0 * grad_norm);

        const SolverReport ref = solve_srm_warmstarted(ch, p, tighter);
        REQUIRE(std::abs(rep.secrecy_bits - ref.secrecy_bits) <= 1e-5);
    }
}

TEST_CASE("solver rejects an infeasible start")
{
    SystemParams p;
    const SystemChannels ch = validation::random_channels(p, 1);
    const SrmProblem prob = SrmProblem::general(ch, p);
    Solution bad;
    bad.p_cw = 2.0 * p.total_power;
    bad.an_cov = arma::cx_mat(p.m_tx, p.m_tx, arma::fill::zeros);
    REQUIRE_THROWS_AS(solve_srm(prob, bad, SolverConfig{}), contract_violation);
}

TEST_CASE("solver config validation")
{
    SolverConfig cfg;
    cfg.shrink = 1.0;
    REQUIRE_THROWS_AS(cfg.validate(), contract_violation);
    cfg = SolverConfig{};
    cfg.eps_outer = 0.0;
    REQUIRE_THROWS_AS(cfg.validate(), contract_violation);
    cfg = SolverConfig{};
    cfg.delta = 1.0;
    REQUIRE_THROWS_AS(cfg.validate(), contract_violation);
}

TEST_CASE("the general solver handles a single-antenna tag directly")
{
    // the full-model route for a single-antenna tag when the eavesdropper is
    // interference-aware and the self-interference is not perfectly cancelled
    SystemParams p;
    p.l_tag = 1;
    p.beta = 0.3;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed + 130);
        const SolverReport rep = solve_srm_warmstarted(ch, p, SolverConfig{});
        REQUIRE_NOTHROW(rep.final.validate(p.total_power));
        for (std::size_t k = 1; k < rep.iterates.size(); ++k)
            REQUIRE(rep.iterates[k].secrecy_bits >= rep.iterates[k - 1].secrecy_bits - 1e-9);
        const SrmProblem prob = SrmProblem::general(ch, p);
        REQUIRE(rep.secrecy_bits >= prob.secrecy_bits(full_cw(prob)) - 1e-9);
    }
}
