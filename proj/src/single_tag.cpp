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

#include "bsec/single_tag.hpp"

#include <algorithm>
#include <cmath>

#include "bsec/linalg.hpp"

namespace bsec
{

namespace
{
constexpr double k_pi = 3.14159265358979323846;
constexpr double k_den_guard = 1e-300;

double guarded_div(double num, double den, const char *what)
{
    if (std::abs(den) < k_den_guard)
        throw numerical_error(std::string(what) + ": denominator magnitude below guard");
    return num / den;
}

// A unit vector orthogonal to the given unit vector (dimension >= 2): start
// from the standard basis vector least aligned with it.
arma::cx_vec unit_orthogonal(const arma::cx_vec &d)
{
    const arma::uword j = arma::abs(d).index_min();
    arma::cx_vec u(d.n_elem, arma::fill::zeros);
    u(j) = 1.0;
    u -= d * std::conj(d(j));
    const double n = arma::norm(u);
    if (n < 1e-12)
        throw numerical_error("unit_orthogonal: could not build an orthogonal direction");
    return u / n;
}
} // namespace

SingleTagInstance SingleTagInstance::from_system(const SystemChannels &ch, const SystemParams &p)
{
    p.validate();
    ch.validate(p);
    if (p.l_tag != 1)
        throw unsupported_configuration("single-antenna-tag solver requires L = 1");
    if (p.beta != 0.0)
        throw unsupported_configuration("single-antenna-tag solver assumes beta = 0 (self-interference AN fully "
                                        "cancelled)");

    SingleTagInstance inst;
    inst.h_tp = ch.h_reader_to_tag.t(); // stored row is h_tp^H
    inst.h_pr = ch.h_tag_to_reader.col(0);
    inst.h_pe = ch.h_tag_to_eve.col(0);
    inst.h_te = ch.h_reader_to_eve;
    inst.alpha = p.alpha;
    inst.sigma2_reader = p.sigma2_reader;
    inst.sigma2_eve = p.sigma2_eve;
    inst.total_power = p.total_power;
    inst.d_tp = std::sqrt(1.0 / static_cast<double>(p.m_tx)) * arma::accu(ch.h_reader_to_tag);
    return inst;
}

void SingleTagInstance::validate() const
{
    const arma::uword m = h_tp.n_elem;
    if (m == 0 || h_pr.n_elem == 0 || h_pe.n_elem == 0)
        throw contract_violation("single-tag instance has empty channel vectors");
    if (h_te.n_rows != h_pe.n_elem || h_te.n_cols != m)
        throw contract_violation("single-tag instance: h_te dimensions do not match h_pe/h_tp");
    if (!h_tp.is_finite() || !h_pr.is_finite() || !h_pe.is_finite() || !h_te.is_finite())
        throw contract_violation("single-tag instance has non-finite channel entries");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw contract_violation("alpha must lie in [0,1]");
    if (!(sigma2_reader > 0.0) || !(sigma2_eve > 0.0))
        throw contract_violation("noise powers must be positive");
    if (!(total_power >= 0.0) || !std::isfinite(total_power))
        throw contract_violation("total_power must be nonnegative and finite");
}

TCoordinates t_coordinates(const SingleTagInstance &inst)
{
    const double nt = arma::norm(inst.h_tp);
    if (nt < k_den_guard)
        throw contract_violation("t_coordinates: reader-to-tag channel is zero");

    TCoordinates tc;
    tc.d1 = inst.h_tp / nt;

    const arma::cx_vec w = inst.h_te.t() * inst.h_pe;
    const double nw = arma::norm(w);
    if (nw > k_den_guard)
    {
        tc.eve_coupled = true;
        tc.d2 = w / nw;
        tc.kappa = std::min(1.0, std::abs(arma::cdot(tc.d1, tc.d2)));
        tc.phi = std::arg(arma::cdot(tc.d2, tc.d1));
        tc.degenerate_aligned = tc.kappa >= 1.0 - 1e-10;
    }
    else
    {
        // AN reaches the eavesdropper only through the backscatter path; any
        // direction orthogonal to d1 stands in for d2 and the r(t) term is 0.
        tc.eve_coupled = false;
        if (tc.d1.n_elem >= 2)
        {
            tc.d2 = unit_orthogonal(tc.d1);
            tc.kappa = 0.0;
            tc.phi = 0.0;
        }
        else
        {
            tc.d2 = tc.d1;
            tc.kappa = 1.0;
            tc.degenerate_aligned = true;
        }
    }
    return tc;
}

double r_of_t(const TCoordinates &tc, double t)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw contract_violation("r_of_t: t must lie in [0,1]");
    if (tc.degenerate_aligned)
        throw degenerate_alignment("r_of_t: d1 and d2 are aligned (kappa = 1)");
    const double k = tc.kappa;
    const double inner = k * std::sqrt(1.0 - t) - std::sqrt((1.0 - k * k) * t);
    return std::clamp(1.0 - inner * inner, 0.0, 1.0);
}

arma::cx_vec v_of_t(const TCoordinates &tc, double t)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw contract_violation("v_of_t: t must lie in [0,1]");
    if (tc.degenerate_aligned)
        throw degenerate_alignment("v_of_t: d1 and d2 are aligned (kappa = 1)");
    const double k = tc.kappa;
    const double rho = std::sqrt((1.0 - t) / (1.0 - k * k));
    const std::complex<double> phase = std::polar(1.0, k_pi - tc.phi);
    return (k * rho - std::sqrt(t)) * phase * tc.d1 + rho * tc.d2;
}

double PsObjective::y(double p_s) const
{
    const double num = 1.0 + guarded_div(a * p_s, 1.0 + b * p_s, "ps objective numerator");
    const double den = 1.0 + guarded_div(c * p_s, 1.0 + d * p_s, "ps objective denominator");
    return guarded_div(num, den, "ps objective ratio");
}

PsObjective ps_objective(const SingleTagInstance &inst, const TCoordinates &tc, double t)
{
    const double norm2_tp = std::pow(arma::norm(inst.h_tp), 2);
    const double norm2_pr = std::pow(arma::norm(inst.h_pr), 2);
    const double norm2_pe = std::pow(arma::norm(inst.h_pe), 2);
    const double gain_cw = std::norm(inst.d_tp);

    double r_term = 0.0;
    if (tc.eve_coupled && norm2_pe > 0.0)
    {
        const double r = tc.degenerate_aligned ? t : r_of_t(tc, t);
        const double norm2_w = std::pow(arma::norm(inst.h_te.t() * inst.h_pe), 2);
        r_term = guarded_div(norm2_w * r, norm2_pe, "ps objective r-term");
    }

    const double l1 = inst.alpha * norm2_pr * norm2_tp * t;
    const double l2 = norm2_pe * norm2_tp * t + r_term;
    const double den_r = inst.sigma2_reader + inst.total_power * l1;
    const double den_e = inst.sigma2_eve + inst.total_power * l2;

    PsObjective f;
    f.a = guarded_div(gain_cw * norm2_pr, den_r, "ps objective a");
    f.b = guarded_div(-l1, den_r, "ps objective b");
    f.c = guarded_div(gain_cw * norm2_pe, den_e, "ps objective c");
    f.d = guarded_div(-l2, den_e, "ps objective d");
    return f;
}

std::vector<double> ps_candidates(const SingleTagInstance &inst, const TCoordinates &tc, double t)
{
    const PsObjective f = ps_objective(inst, tc, t);
    const double a = f.a, b = f.b, c = f.c, d = f.d;
    const double p = inst.total_power;

    const double q2 = a * d * d + a * c * d - a * b * c - b * b * c;
    const double q1 = 2.0 * (a * d - b * c);
    const double q0 = a - c;

    // Degeneracy tests are relative to the constituent term magnitudes; the
    // raw coefficients carry 1/W^2 units and can be huge or cancel exactly.
    const double scale2 = std::max({std::abs(a * d * d), std::abs(a * c * d), std::abs(a * b * c),
                                    std::abs(b * b * c), 1e-300});
    const double scale1 = std::max({std::abs(2.0 * a * d), std::abs(2.0 * b * c), 1e-300});

    std::vector<double> roots;
    if (std::abs(q2) > 1e-14 * scale2)
    {
        const double disc = q1 * q1 - 4.0 * q2 * q0;
        if (disc >= 0.0)
        {
            const double sq = std::sqrt(disc);
            const double qq = -0.5 * (q1 + std::copysign(sq, q1));
            roots.push_back(qq / q2);
            if (std::abs(qq) > 0.0)
                roots.push_back(q0 / qq);
        }
    }
    else if (std::abs(q1) > 1e-14 * scale1)
    {
        roots.push_back(-q0 / q1);
    }
    // else: the derivative vanishes identically; only the boundary remains.

    std::vector<double> out;
    out.push_back(p);
    for (double r : roots)
    {
        if (!std::isfinite(r) || r < 0.0 || r > p)
            continue;
        bool dup = false;
        for (double existing : out)
            dup = dup || std::abs(existing - r) <= 1e-12 * std::max(1.0, p);
        if (!dup)
            out.push_back(r);
    }
    return out;
}

namespace
{
struct BestPs
{
    double p_s = 0.0;
    double y = 1.0;
};

// Best power split at a fixed t. The full-power point is evaluated first so
// that a constant objective resolves to the power-equality convention; P_s=0
// is always tried as well.
BestPs best_ps_at(const SingleTagInstance &inst, const TCoordinates &tc, double t)
{
    const PsObjective f = ps_objective(inst, tc, t);
    std::vector<double> cands = ps_candidates(inst, tc, t);
    cands.push_back(0.0);

    BestPs best{cands.front(), f.y(cands.front())};
    for (std::size_t i = 1; i < cands.size(); ++i)
    {
        const double y = f.y(cands[i]);
        if (y > best.y)
            best = {cands[i], y};
    }
    return best;
}

arma::cx_vec an_direction(const TCoordinates &tc, double t)
{
    if (tc.degenerate_aligned)
    {
        if (tc.d1.n_elem == 1)
            return tc.d1;
        // d2 carries no extra information; any split between d1 and its
        // orthogonal complement realizes |d1^H v|^2 = t.
        return std::sqrt(t) * tc.d1 + std::sqrt(1.0 - t) * unit_orthogonal(tc.d1);
    }
    return v_of_t(tc, t);
}

SingleTagResult assemble(const SingleTagInstance &inst, const TCoordinates &tc, double t, const BestPs &best)
{
    const arma::cx_vec v = an_direction(tc, t);
    SingleTagResult res;
    res.solution.p_cw = best.p_s;
    res.solution.an_cov = hermitize((inst.total_power - best.p_s) * (v * v.t()));
    res.secrecy_bits = std::max(0.0, std::log2(best.y));
    res.t_star = t;
    res.objective = best.y;
    return res;
}

SingleTagResult zero_power_result(const SingleTagInstance &inst)
{
    SingleTagResult res;
    res.solution.p_cw = 0.0;
    res.solution.an_cov = arma::cx_mat(inst.h_tp.n_elem, inst.h_tp.n_elem, arma::fill::zeros);
    return res;
}
} // namespace

SingleTagResult solve_single(const SingleTagInstance &inst, arma::uword grid_points)
{
    inst.validate();
    if (grid_points < 2)
        throw contract_violation("solve_single: grid_points must be at least 2");
    if (inst.total_power <= 0.0)
        return zero_power_result(inst);

    const TCoordinates tc = t_coordinates(inst);
    if (inst.h_tp.n_elem == 1)
    {
        // every unit direction satisfies |d1^H v|^2 = 1
        return assemble(inst, tc, 1.0, best_ps_at(inst, tc, 1.0));
    }

    double t_best = 0.0;
    BestPs best = best_ps_at(inst, tc, 0.0);
    const double h = 1.0 / static_cast<double>(grid_points - 1);
    for (arma::uword i = 1; i < grid_points; ++i)
    {
        const double t = std::min(1.0, static_cast<double>(i) * h);
        const BestPs cand = best_ps_at(inst, tc, t);
        if (cand.y > best.y)
        {
            best = cand;
            t_best = t;
        }
    }

    // Local golden-section refinement around the best grid point.
    double lo = std::max(0.0, t_best - h);
    double hi = std::min(1.0, t_best + h);
    const double gr = 0.6180339887498949;
    double t1 = hi - gr * (hi - lo);
    double t2 = lo + gr * (hi - lo);
    BestPs y1 = best_ps_at(inst, tc, t1);
    BestPs y2 = best_ps_at(inst, tc, t2);
    auto track = [&](double t, const BestPs &cand) {
        if (cand.y > best.y)
        {
            best = cand;
            t_best = t;
        }
    };
    track(t1, y1);
    track(t2, y2);
    while (hi - lo > 1e-6)
    {
        if (y1.y >= y2.y)
        {
            hi = t2;
            t2 = t1;
            y2 = y1;
            t1 = hi - gr * (hi - lo);
            y1 = best_ps_at(inst, tc, t1);
            track(t1, y1);
        }
        else
        {
            lo = t1;
            t1 = t2;
            y1 = y2;
            t2 = lo + gr * (hi - lo);
            y2 = best_ps_at(inst, tc, t2);
            track(t2, y2);
        }
    }

    return assemble(inst, tc, t_best, best);
}

SingleTagResult solve_single_nullspace(const SingleTagInstance &inst)
{
    inst.validate();
    if (inst.h_tp.n_elem < 2)
        throw unsupported_configuration("nullspace AN for the single-antenna tag requires at least two transmit "
                                        "antennas");
    if (inst.total_power <= 0.0)
        return zero_power_result(inst);

    const TCoordinates tc = t_coordinates(inst);
    return assemble(inst, tc, 0.0, best_ps_at(inst, tc, 0.0));
}

} // namespace bsec
