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

#include "bsec/pg_solver.hpp"

#include <cmath>

#include "bsec/linalg.hpp"

namespace bsec
{

namespace
{
constexpr double k_ln2 = 0.6931471805599453;

arma::cx_mat real_diag_to_cx(const arma::vec &d)
{
    return arma::cx_mat(arma::diagmat(d), arma::mat(d.n_elem, d.n_elem, arma::fill::zeros));
}
} // namespace

void SolverConfig::validate() const
{
    if (!(eps_outer > 0.0) || !(eps_inner > 0.0))
        throw contract_violation("termination tolerances must be positive");
    if (!(shrink > 0.0 && shrink < 1.0))
        throw contract_violation("shrink must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw contract_violation("delta must lie in (0,1)");
    if (!(mu0 > 0.0))
        throw contract_violation("mu0 must be positive");
    if (max_outer == 0 || max_inner == 0 || max_backtrack == 0)
        throw contract_violation("iteration caps must be positive");
}

SrmProblem SrmProblem::general(const SystemChannels &ch, const SystemParams &p)
{
    p.validate();
    ch.validate(p);
    const EffectiveMatrices eff = effective_matrices(ch);

    SrmProblem prob;
    prob.h_pr = ch.h_tag_to_reader;
    prob.h_pe = ch.h_tag_to_eve;
    prob.g_bs = ch.h_reader_to_tag;
    prob.g_si = ch.h_self_interference;
    prob.g_te = ch.h_reader_to_eve;
    prob.a_mat = eff.a_mat;
    prob.b_mat = eff.b_mat;
    prob.alpha = p.alpha;
    prob.beta = p.beta;
    prob.sigma2_r = p.sigma2_reader;
    prob.sigma2_e = p.sigma2_eve;
    prob.total_power = p.total_power;
    return prob;
}

arma::cx_mat SrmProblem::cov_reader(const Solution &x) const
{
    const arma::vec phi = arma::real(arma::diagvec(g_bs * x.an_cov * g_bs.t()));
    arma::cx_mat r = alpha * (h_pr * real_diag_to_cx(phi) * h_pr.t()) + beta * (g_si * x.an_cov * g_si.t());
    r.diag() += sigma2_r;
    return hermitize(r);
}

arma::cx_mat SrmProblem::cov_eve(const Solution &x) const
{
    const arma::vec phi = arma::real(arma::diagvec(g_bs * x.an_cov * g_bs.t()));
    arma::cx_mat r = h_pe * real_diag_to_cx(phi) * h_pe.t() + g_te * x.an_cov * g_te.t();
    r.diag() += sigma2_e;
    return hermitize(r);
}

double SrmProblem::rate_reader_bits(const Solution &x) const
{
    const arma::cx_mat rr = cov_reader(x);
    return (logdet_hpd(rr + x.p_cw * a_mat, "reader rate") - logdet_hpd(rr, "reader interference")) / k_ln2;
}

double SrmProblem::rate_eve_bits(const Solution &x) const
{
    const arma::cx_mat re = cov_eve(x);
    return (logdet_hpd(re + x.p_cw * b_mat, "eavesdropper rate") - logdet_hpd(re, "eavesdropper interference")) /
           k_ln2;
}

double SrmProblem::secrecy_signed_bits(const Solution &x) const
{
    return rate_reader_bits(x) - rate_eve_bits(x);
}

double SrmProblem::secrecy_bits(const Solution &x) const
{
    return std::max(0.0, secrecy_signed_bits(x));
}

SurrogateContext make_surrogate_context(const SrmProblem &prob, const Solution &anchor)
{
    const arma::cx_mat rr = prob.cov_reader(anchor);
    const arma::cx_mat re_cw = prob.cov_eve(anchor) + anchor.p_cw * prob.b_mat;

    SurrogateContext ctx;
    ctx.inv_cov_reader = inv_hpd(rr, "surrogate context, reader covariance");
    ctx.inv_cov_eve_cw = inv_hpd(re_cw, "surrogate context, eavesdropper covariance");
    ctx.anchor = anchor;
    ctx.logdet_inv_terms =
        -logdet_hpd(rr, "surrogate context, reader covariance") - logdet_hpd(re_cw, "surrogate context, eve covariance");
    return ctx;
}

double surrogate_value(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x)
{
    const arma::cx_mat rr = prob.cov_reader(x);
    const arma::cx_mat re = prob.cov_eve(x);

    const double f0 = logdet_hpd(rr + x.p_cw * prob.a_mat, "surrogate f0, reader pencil") +
                      logdet_hpd(re, "surrogate f0, eve covariance");
    const double tr0 = std::real(arma::trace(ctx.inv_cov_reader * rr));
    const double tr1 = std::real(arma::trace(ctx.inv_cov_eve_cw * (re + x.p_cw * prob.b_mat)));

    const double g = f0 - tr0 - tr1 + ctx.logdet_inv_terms;
    if (!std::isfinite(g))
        throw numerical_error("surrogate value is not finite");
    return g;
}

SurrogateGradient surrogate_gradient(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x)
{
    const arma::cx_mat rr = prob.cov_reader(x);
    const arma::cx_mat re = prob.cov_eve(x);
    const arma::cx_mat f_inv = inv_hpd(rr + x.p_cw * prob.a_mat, "surrogate gradient, reader pencil");
    const arma::cx_mat re_inv = inv_hpd(re, "surrogate gradient, eve covariance");

    const arma::cx_mat x0 = f_inv - ctx.inv_cov_reader;
    const arma::cx_mat x1 = re_inv - ctx.inv_cov_eve_cw;

    // Per-tag-antenna trace weights: entry i is Tr(X0 * H_pr e_i e_i^T H_pr^H)
    // and likewise on the eavesdropper side.
    const arma::vec w_reader = arma::real(arma::diagvec(prob.h_pr.t() * x0 * prob.h_pr));
    const arma::vec w_eve = arma::real(arma::diagvec(prob.h_pe.t() * x1 * prob.h_pe));

    arma::cx_mat g = prob.beta * (prob.g_si.t() * x0 * prob.g_si) + prob.g_te.t() * x1 * prob.g_te +
                     prob.g_bs.t() * real_diag_to_cx(prob.alpha * w_reader + w_eve) * prob.g_bs;

    SurrogateGradient grad;
    grad.an_cov = hermitize(g);
    grad.p_cw = std::real(arma::trace(f_inv * prob.a_mat)) - std::real(arma::trace(ctx.inv_cov_eve_cw * prob.b_mat));
    return grad;
}

SurrogateContext make_surrogate_context(const SystemChannels &ch, const SystemParams &p, const Solution &anchor)
{
    return make_surrogate_context(SrmProblem::general(ch, p), anchor);
}

double surrogate_value(const SystemChannels &ch, const SystemParams &p, const SurrogateContext &ctx,
                       const Solution &x)
{
    return surrogate_value(SrmProblem::general(ch, p), ctx, x);
}

SurrogateGradient surrogate_gradient(const SystemChannels &ch, const SystemParams &p, const SurrogateContext &ctx,
                                     const Solution &x)
{
    return surrogate_gradient(SrmProblem::general(ch, p), ctx, x);
}

double waterfill_level(const arma::vec &v, double p_total)
{
    if (!v.is_finite())
        throw contract_violation("waterfill_level: input vector has non-finite entries");
    if (!(p_total >= 0.0) || !std::isfinite(p_total))
        throw contract_violation("waterfill_level: power budget must be nonnegative and finite");

    const double positive_sum = arma::accu(arma::clamp(v, 0.0, arma::datum::inf));
    if (positive_sum <= p_total)
        return 0.0;

    const arma::vec s = arma::sort(v, "descend");
    const arma::uword m = s.n_elem;
    double prefix = 0.0;
    double level = s(0);
    bool found = false;
    for (arma::uword k = 0; k < m; ++k)
    {
        prefix += s(k);
        const double candidate = (prefix - p_total) / static_cast<double>(k + 1);
        const double next = (k + 1 < m) ? s(k + 1) : -arma::datum::inf;
        if (s(k) > candidate && candidate >= next)
        {
            level = candidate;
            found = true;
        }
    }
    if (!found)
        level = s(0); // only reachable when the clipped sum must vanish (p_total == 0)
    return std::max(level, 0.0);
}

Solution project_feasible(double p_total, double p_cw_tilde, const arma::cx_mat &an_cov_tilde)
{
    if (!(p_total >= 0.0) || !std::isfinite(p_total))
        throw contract_violation("project_feasible: power budget must be nonnegative and finite");
    if (!std::isfinite(p_cw_tilde) || !an_cov_tilde.is_finite())
        throw contract_violation("project_feasible: input point has non-finite entries");
    if (!an_cov_tilde.is_square())
        throw contract_violation("project_feasible: an_cov_tilde must be square");

    arma::vec eigval;
    arma::cx_mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, hermitize(an_cov_tilde)))
        throw numerical_error("project_feasible: eigendecomposition failed");

    arma::vec v(eigval.n_elem + 1);
    v(0) = p_cw_tilde;
    v.tail(eigval.n_elem) = eigval;

    const double level = waterfill_level(v, p_total);
    arma::vec clipped = arma::clamp(v - level, 0.0, arma::datum::inf);

    Solution out;
    out.p_cw = clipped(0);
    out.an_cov = hermitize(eigvec * real_diag_to_cx(clipped.tail(eigval.n_elem)) * eigvec.t());
    return out;
}

ArmijoResult armijo_step(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &x, double g_x,
                         const SurrogateGradient &grad, const SolverConfig &cfg)
{
    double mu = cfg.mu0;
    for (arma::uword j = 0; j < cfg.max_backtrack; ++j, mu *= cfg.shrink)
    {
        const Solution cand = project_feasible(prob.total_power, x.p_cw + mu * grad.p_cw, x.an_cov + mu * grad.an_cov);
        const double g_cand = surrogate_value(prob, ctx, cand);
        // inner product of the gradient with the realized (projected) step
        const double along = std::real(arma::trace(grad.an_cov.t() * (cand.an_cov - x.an_cov))) +
                             grad.p_cw * (cand.p_cw - x.p_cw);
        if (g_cand > g_x + cfg.delta * along)
            return {cand, g_cand, mu, j, false};
    }
    return {x, g_x, 0.0, cfg.max_backtrack, true};
}

InnerResult solve_inner(const SrmProblem &prob, const SurrogateContext &ctx, const Solution &start,
                        const SolverConfig &cfg)
{
    Solution x = start;
    double g = surrogate_value(prob, ctx, x);

    InnerResult res;
    res.best = x;
    res.g_best = g;

    // The line search restarts near the last accepted step instead of at the
    // configured mu0 every time; one growth per iteration lets it recover, and
    // the step grid stays inside {mu0 * shrink^j}.
    SolverConfig local = cfg;
    while (res.iterations < cfg.max_inner)
    {
        ++res.iterations;
        const SurrogateGradient grad = surrogate_gradient(prob, ctx, x);
        const ArmijoResult step = armijo_step(prob, ctx, x, g, grad, local);
        if (step.stalled)
            return res; // no acceptable ascent step left: inner convergence
        local.mu0 = std::min(cfg.mu0, step.mu_used / cfg.shrink);

        const double g_prev = g;
        x = step.next;
        g = step.g_next;
        if (g > res.g_best)
        {
            res.g_best = g;
            res.best = x;
        }
        if (rel_change(g, g_prev) <= cfg.eps_inner)
            return res;
    }
    res.hit_cap = true;
    return res;
}

const char *termination_name(Termination t)
{
    switch (t)
    {
    case Termination::converged:
        return "converged";
    case Termination::max_outer_hit:
        return "max_outer_hit";
    case Termination::max_inner_hit:
        return "max_inner_hit";
    }
    return "unknown";
}

const char *warm_start_name(WarmStartKind k)
{
    switch (k)
    {
    case WarmStartKind::none:
        return "none";
    case WarmStartKind::nbs_an:
        return "nbs_an";
    case WarmStartKind::nsi_an:
        return "nsi_an";
    case WarmStartKind::carried:
        return "carried";
    case WarmStartKind::an_restart:
        return "an_restart";
    }
    return "unknown";
}

SolverReport solve_srm(const SrmProblem &prob, const Solution &x_init, const SolverConfig &cfg)
{
    cfg.validate();
    x_init.validate(prob.total_power);
    if (x_init.an_cov.n_rows != prob.an_dim())
        throw contract_violation("solve_srm: initial AN covariance dimension does not match the problem");

    Solution x = x_init;
    // Termination tracks the signed rate: the clamped rate is identically zero
    // below the break-even point and would stop the ascent there. The change
    // is measured against at least a millibit so vanishing rates do not demand
    // ever-finer resolution.
    constexpr double k_rate_floor = 1e-3;
    double signed_prev = prob.secrecy_signed_bits(x);
    double signed_best = signed_prev;

    SolverReport rep;
    rep.final = x;
    rep.secrecy_bits = std::max(0.0, signed_prev);

    bool converged = false;
    bool last_inner_cap = false;
    for (arma::uword n = 1; n <= cfg.max_outer; ++n)
    {
        const SurrogateContext ctx = make_surrogate_context(prob, x);
        const double g_anchor = surrogate_value(prob, ctx, x);
        if (n == 1)
            rep.iterates.push_back({0, 0, g_anchor, rep.secrecy_bits});

        // Solve each subproblem at least to the resolution the outer test
        // needs: the surrogate carries a constant offset, so its relative
        // test alone can truncate inner progress above the outer threshold
        // and leave the outer loop inching forever.
        SolverConfig inner_cfg = cfg;
        const double outer_scale_nats = cfg.eps_outer * k_ln2 * std::max(std::abs(signed_prev), k_rate_floor);
        inner_cfg.eps_inner = std::min(cfg.eps_inner, outer_scale_nats / std::max(std::abs(g_anchor), 1.0));

        const InnerResult inner = solve_inner(prob, ctx, x, inner_cfg);
        x = inner.best;
        last_inner_cap = inner.hit_cap;
        rep.total_inner += inner.iterations;

        const double signed_cs = prob.secrecy_signed_bits(x);
        rep.iterates.push_back({n, inner.iterations, inner.g_best, std::max(0.0, signed_cs)});
        if (signed_cs > signed_best)
        {
            signed_best = signed_cs;
            rep.secrecy_bits = std::max(0.0, signed_cs);
            rep.final = x;
        }
        if (std::abs(signed_cs - signed_prev) <= cfg.eps_outer * std::max(std::abs(signed_prev), k_rate_floor))
        {
            converged = true;
            break;
        }
        signed_prev = signed_cs;
    }

    rep.termination = converged ? Termination::converged
                                : (last_inner_cap ? Termination::max_inner_hit : Termination::max_outer_hit);
    return rep;
}

SolverReport solve_srm(const SystemChannels &ch, const SystemParams &p, const Solution &x_init,
                       const SolverConfig &cfg)
{
    return solve_srm(SrmProblem::general(ch, p), x_init, cfg);
}

} // namespace bsec
