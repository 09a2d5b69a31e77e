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

#include "bsec/nullspace.hpp"

#include <sstream>

#include "bsec/linalg.hpp"

namespace bsec
{

const char *nullspace_kind_name(NullspaceKind kind)
{
    return kind == NullspaceKind::no_backscatter ? "no_backscatter" : "no_self_interference";
}

namespace
{
// Alternative starting point with almost the whole budget on the AN side.
// The surrogate iteration started from the full-CW point can crawl through a
// nearly flat valley in log-power space on realizations whose optimum is
// AN-dominant; a second start from the other end of the power split reaches
// that basin directly.
Solution an_heavy_init(double total_power, arma::uword dim)
{
    Solution s;
    s.p_cw = 0.01 * total_power;
    s.an_cov = (0.99 * total_power / static_cast<double>(dim)) *
               arma::cx_mat(dim, dim, arma::fill::eye);
    return s;
}

// Better secrecy rate wins; ties keep the first (deterministic).
SolverReport better_report(SolverReport a, SolverReport b)
{
    return b.secrecy_bits > a.secrecy_bits ? std::move(b) : std::move(a);
}
} // namespace

NullspaceBasis nullspace_basis(const SystemChannels &ch, NullspaceKind kind)
{
    const arma::cx_mat &killed =
        (kind == NullspaceKind::no_backscatter) ? ch.h_reader_to_tag : ch.h_self_interference;
    const arma::uword m = killed.n_cols;
    const arma::uword rows = killed.n_rows;
    if (m <= rows)
    {
        std::ostringstream msg;
        msg << nullspace_kind_name(kind) << " AN requires more transmit antennas than the nulled channel has rows: "
            << "need M > " << (kind == NullspaceKind::no_backscatter ? "L" : "N") << ", got M=" << m << " and "
            << (kind == NullspaceKind::no_backscatter ? "L=" : "N=") << rows;
        throw unsupported_configuration(msg.str());
    }

    arma::cx_mat u, v;
    arma::vec sv;
    if (!arma::svd(u, sv, v, killed))
        throw numerical_error("nullspace_basis: singular value decomposition failed");

    NullspaceBasis basis;
    basis.kind = kind;
    basis.v_basis = v.cols(rows, m - 1); // trailing right singular vectors, by index

    const double residual = arma::norm(killed * basis.v_basis, "fro");
    const double scale = arma::norm(killed, "fro");
    if (residual > 1e-8 * std::max(scale, 1e-300))
        throw numerical_error("nullspace_basis: residual too large, the nulled channel is rank deficient in an "
                              "unexpected way");
    return basis;
}

SrmProblem make_reduced_problem(const SystemChannels &ch, const SystemParams &p, const NullspaceBasis &basis)
{
    SrmProblem prob = SrmProblem::general(ch, p);
    prob.g_bs = ch.h_reader_to_tag * basis.v_basis;
    prob.g_si = ch.h_self_interference * basis.v_basis;
    prob.g_te = ch.h_reader_to_eve * basis.v_basis;
    return prob;
}

SolverReport solve_srm_nullspace(const SystemChannels &ch, const SystemParams &p, NullspaceKind kind,
                                 const SolverConfig &cfg, const Solution *init_reduced)
{
    const NullspaceBasis basis = nullspace_basis(ch, kind);
    const SrmProblem prob = make_reduced_problem(ch, p, basis);
    const arma::uword r = basis.v_basis.n_cols;

    Solution start;
    start.p_cw = p.total_power;
    start.an_cov = arma::cx_mat(r, r, arma::fill::zeros);
    WarmStartKind ws = WarmStartKind::none;

    if (init_reduced != nullptr && init_reduced->an_cov.n_rows == r &&
        init_reduced->power_used() <= p.total_power + 1e-12 && init_reduced->p_cw >= 0.0)
    {
        if (prob.secrecy_bits(*init_reduced) > prob.secrecy_bits(start))
        {
            start = *init_reduced;
            ws = WarmStartKind::carried;
        }
    }

    SolverReport rep = solve_srm(prob, start, cfg);
    rep.warm_start = ws;
    if (p.total_power > 0.0)
    {
        SolverReport alt = solve_srm(prob, an_heavy_init(p.total_power, r), cfg);
        alt.warm_start = WarmStartKind::an_restart;
        rep = better_report(std::move(rep), std::move(alt));
    }
    rep.reduced_w = rep.final.an_cov;
    rep.final.an_cov = hermitize(basis.v_basis * rep.reduced_w * basis.v_basis.t());
    return rep;
}

SolverReport solve_srm_warmstarted(const SystemChannels &ch, const SystemParams &p, const SolverConfig &cfg,
                                   const Solution *extra_init)
{
    const SrmProblem prob = SrmProblem::general(ch, p);

    Solution init;
    init.p_cw = p.total_power;
    init.an_cov = arma::cx_mat(p.m_tx, p.m_tx, arma::fill::zeros);
    WarmStartKind ws = WarmStartKind::none;
    double init_cs = prob.secrecy_bits(init);

    auto consider = [&](const Solution &cand, WarmStartKind kind) {
        if (cand.an_cov.n_rows != p.m_tx || cand.power_used() > p.total_power + 1e-12 || cand.p_cw < 0.0)
            return;
        const double cs = prob.secrecy_bits(cand);
        if (cs > init_cs)
        {
            init = cand;
            init_cs = cs;
            ws = kind;
        }
    };

    if (p.m_tx > p.l_tag)
        consider(solve_srm_nullspace(ch, p, NullspaceKind::no_backscatter, cfg).final, WarmStartKind::nbs_an);
    if (p.m_tx > p.n_rx)
        consider(solve_srm_nullspace(ch, p, NullspaceKind::no_self_interference, cfg).final, WarmStartKind::nsi_an);
    if (extra_init != nullptr)
        consider(*extra_init, WarmStartKind::carried);

    SolverReport rep = solve_srm(prob, init, cfg);
    rep.warm_start = ws;
    if (p.total_power > 0.0)
    {
        SolverReport alt = solve_srm(prob, an_heavy_init(p.total_power, p.m_tx), cfg);
        alt.warm_start = WarmStartKind::an_restart;
        rep = better_report(std::move(rep), std::move(alt));
    }
    return rep;
}

} // namespace bsec
