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
#include "bsec/pg_solver.hpp"
#include "bsec/validation.hpp"

using namespace bsec;

namespace
{
constexpr double k_ln2 = 0.6931471805599453;
}

TEST_CASE("surrogate at the anchor equals the scaled signed rate minus N+K")
{
    SystemParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed);
        const SrmProblem prob = SrmProblem::general(ch, p);
        const Solution anchor = validation::random_feasible(p.m_tx, p.total_power, seed + 50);
        const SurrogateContext ctx = make_surrogate_context(prob, anchor);

        const double g = surrogate_value(prob, ctx, anchor);
        const double expect = prob.secrecy_signed_bits(anchor) * k_ln2 - double(p.n_rx + p.k_eve);
        REQUIRE(std::abs(g - expect) < 1e-9 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("surrogate context inverses match their covariances")
{
    SystemParams p;
    const SystemChannels ch = validation::random_channels(p, 3);
    const SrmProblem prob = SrmProblem::general(ch, p);
    const Solution anchor = validation::random_feasible(p.m_tx, p.total_power, 4);
    const SurrogateContext ctx = make_surrogate_context(prob, anchor);

    const arma::cx_mat eye_r = ctx.inv_cov_reader * prob.cov_reader(anchor);
    const arma::cx_mat eye_e = ctx.inv_cov_eve_cw * (prob.cov_eve(anchor) + anchor.p_cw * prob.b_mat);
    REQUIRE(arma::norm(eye_r - arma::cx_mat(p.n_rx, p.n_rx, arma::fill::eye), "fro") < 1e-8);
    REQUIRE(arma::norm(eye_e - arma::cx_mat(p.k_eve, p.k_eve, arma::fill::eye), "fro") < 1e-8);
}

TEST_CASE("surrogate is concave along feasible segments")
{
    SystemParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed + 200);
        const SrmProblem prob = SrmProblem::general(ch, p);
        const SurrogateContext ctx =
            make_surrogate_context(prob, validation::random_feasible(p.m_tx, p.total_power, seed + 201));

        const Solution a = validation::random_feasible(p.m_tx, p.total_power, seed + 202, 0.0);
        const Solution b = validation::random_feasible(p.m_tx, p.total_power, seed + 203, 0.0);
        Solution mid;
        mid.p_cw = 0.5 * (a.p_cw + b.p_cw);
        mid.an_cov = 0.5 * (a.an_cov + b.an_cov);

        const double g_mid = surrogate_value(prob, ctx, mid);
        const double avg = 0.5 * (surrogate_value(prob, ctx, a) + surrogate_value(prob, ctx, b));
        REQUIRE(g_mid >= avg - 1e-9);
    }
}

TEST_CASE("degenerate zero-power budget keeps the surrogate finite")
{
    // unit noise makes the anchor-constant log-det terms vanish, so the value
    // is exactly f0(0,0) - (N + K)
    SystemParams p;
    p.total_power = 0.0;
    p.sigma2_reader = p.sigma2_eve = 1.0;
    const SystemChannels ch = validation::random_channels(p, 77);
    const SrmProblem prob = SrmProblem::general(ch, p);

    Solution zero;
    zero.p_cw = 0.0;
    zero.an_cov = arma::cx_mat(p.m_tx, p.m_tx, arma::fill::zeros);
    const SurrogateContext ctx = make_surrogate_context(prob, zero);

    const double g = surrogate_value(prob, ctx, zero);
    const double f0 = logdet_hpd(prob.cov_reader(zero), "t") + logdet_hpd(prob.cov_eve(zero), "t");
    REQUIRE(std::isfinite(g));
    REQUIRE(std::abs(g - (f0 - double(p.n_rx + p.k_eve))) < 1e-12);
    REQUIRE(std::abs(g - (-double(p.n_rx + p.k_eve))) < 1e-12);
}

TEST_CASE("AN gradient vanishes when no AN path reaches reader or eavesdropper")
{
    SystemParams p;
    p.alpha = 0.0;
    p.beta = 0.0;
    SystemChannels ch = validation::random_channels(p, 31);
    ch.h_reader_to_eve.zeros();
    ch.h_tag_to_eve.zeros(); // the backscattered AN otherwise still reaches the eavesdropper
    const SrmProblem prob = SrmProblem::general(ch, p);
    const Solution anchor = validation::random_feasible(p.m_tx, p.total_power, 32);
    const SurrogateContext ctx = make_surrogate_context(prob, anchor);
    const Solution x = validation::random_feasible(p.m_tx, p.total_power, 33);

    const SurrogateGradient grad = surrogate_gradient(prob, ctx, x);
    REQUIRE(arma::norm(grad.an_cov, "fro") == 0.0);
}

TEST_CASE("analytic gradient matches central finite differences")
{
    SystemParams p;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed + 400);
        const SrmProblem prob = SrmProblem::general(ch, p);
        const SurrogateContext ctx =
            make_surrogate_context(prob, validation::random_feasible(p.m_tx, p.total_power, seed + 401));
        const Solution x = validation::random_feasible(p.m_tx, p.total_power, seed + 402);

        const SurrogateGradient a = surrogate_gradient(prob, ctx, x);
        const SurrogateGradient fd = validation::finite_difference_gradient(prob, ctx, x, 1e-6);
        const double num =
            std::sqrt(std::pow(arma::norm(a.an_cov - fd.an_cov, "fro"), 2) + std::pow(a.p_cw - fd.p_cw, 2));
        const double den = std::sqrt(std::pow(arma::norm(a.an_cov, "fro"), 2) + std::pow(a.p_cw, 2));
        worst = std::max(worst, num / den);
    }
    REQUIRE(worst <= 1e-4);
}

TEST_CASE("CW-power gradient sign tracks the reader-vs-eavesdropper margin")
{
    SystemParams p;
    const SystemChannels ch = validation::random_channels(p, 55);
    const SrmProblem prob = SrmProblem::general(ch, p);
    const Solution anchor = validation::random_feasible(p.m_tx, p.total_power, 56);
    const SurrogateContext ctx = make_surrogate_context(prob, anchor);

    const SurrogateGradient g = surrogate_gradient(prob, ctx, anchor);
    const arma::cx_mat f_inv = arma::inv(prob.cov_reader(anchor) + anchor.p_cw * prob.a_mat);
    const double expect =
        std::real(arma::trace(f_inv * prob.a_mat)) - std::real(arma::trace(ctx.inv_cov_eve_cw * prob.b_mat));
    REQUIRE(std::abs(g.p_cw - expect) < 1e-9 * std::max(1.0, std::abs(expect)));

    const SurrogateGradient fd = validation::finite_difference_gradient(prob, ctx, anchor, 1e-6);
    REQUIRE(std::abs(g.p_cw - fd.p_cw) <= 1e-4 * std::max(1.0, std::abs(g.p_cw)));
}

TEST_CASE("first-order expansion upper-bounds the log-det terms")
{
    SystemParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const SystemChannels ch = validation::random_channels(p, seed + 600);
        const SrmProblem prob = SrmProblem::general(ch, p);
        const Solution anchor = validation::random_feasible(p.m_tx, p.total_power, seed + 601, 0.0);
        const Solution x = validation::random_feasible(p.m_tx, p.total_power, seed + 602, 0.0);

        const arma::cx_mat rr_a = prob.cov_reader(anchor);
        const arma::cx_mat rr_x = prob.cov_reader(x);
        const double lhs_r = logdet_hpd(rr_x, "t");
        const double rhs_r =
            logdet_hpd(rr_a, "t") + std::real(arma::trace(arma::inv(rr_a) * (rr_x - rr_a)));
        REQUIRE(lhs_r <= rhs_r + 1e-9);

        const arma::cx_mat recw_a = prob.cov_eve(anchor) + anchor.p_cw * prob.b_mat;
        const arma::cx_mat recw_x = prob.cov_eve(x) + x.p_cw * prob.b_mat;
        const double lhs_e = logdet_hpd(recw_x, "t");
        const double rhs_e =
            logdet_hpd(recw_a, "t") + std::real(arma::trace(arma::inv(recw_a) * (recw_x - recw_a)));
        REQUIRE(lhs_e <= rhs_e + 1e-9);

        // consequence: the surrogate under-estimates the shifted signed rate
        const SurrogateContext ctx = make_surrogate_context(prob, anchor);
        const double g = surrogate_value(prob, ctx, x);
        const double bound = prob.secrecy_signed_bits(x) * k_ln2 - double(p.n_rx + p.k_eve);
        REQUIRE(g <= bound + 1e-9);
    }
}

TEST_CASE("trace-form and Taylor-form subproblems agree up to an anchor constant")
{
    SystemParams p;
    const SystemChannels ch = validation::random_channels(p, 71);
    const SrmProblem prob = SrmProblem::general(ch, p);
    const SurrogateContext ctx =
        make_surrogate_context(prob, validation::random_feasible(p.m_tx, p.total_power, 72));

    double ref = 0.0;
    for (std::uint64_t k = 0; k < 6; ++k)
    {
        const Solution x = validation::random_feasible(p.m_tx, p.total_power, 80 + k, 0.0);
        const double diff = surrogate_value(prob, ctx, x) - validation::spca_surrogate_value(prob, ctx, x);
        if (k == 0)
            ref = diff;
        REQUIRE(std::abs(diff - ref) < 1e-9);

        const SurrogateGradient ga = surrogate_gradient(prob, ctx, x);
        const SurrogateGradient gb = validation::spca_surrogate_gradient(prob, ctx, x);
        const double num =
            std::sqrt(std::pow(arma::norm(ga.an_cov - gb.an_cov, "fro"), 2) + std::pow(ga.p_cw - gb.p_cw, 2));
        const double den = std::sqrt(std::pow(arma::norm(ga.an_cov, "fro"), 2) + std::pow(ga.p_cw, 2));
        REQUIRE(num / den <= 1e-10);
    }
}
