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

#include "bsec/schemes.hpp"

#include <sstream>

namespace bsec
{

const char *scheme_name(Scheme s)
{
    switch (s)
    {
    case Scheme::general:
        return "general";
    case Scheme::nbs_an:
        return "nbs_an";
    case Scheme::nsi_an:
        return "nsi_an";
    case Scheme::no_an:
        return "no_an";
    case Scheme::single_optimal:
        return "single_optimal";
    case Scheme::single_nullspace:
        return "single_nullspace";
    }
    return "unknown";
}

std::optional<Scheme> scheme_from_name(const std::string &name)
{
    for (Scheme s : {Scheme::general, Scheme::nbs_an, Scheme::nsi_an, Scheme::no_an, Scheme::single_optimal,
                     Scheme::single_nullspace})
        if (name == scheme_name(s))
            return s;
    return std::nullopt;
}

void check_scheme_compatible(Scheme s, const SystemParams &p)
{
    std::ostringstream msg;
    switch (s)
    {
    case Scheme::nbs_an:
        if (p.m_tx <= p.l_tag)
        {
            msg << "scheme nbs_an requires M > L, got M=" << p.m_tx << " and L=" << p.l_tag;
            throw contract_violation(msg.str());
        }
        break;
    case Scheme::nsi_an:
        if (p.m_tx <= p.n_rx)
        {
            msg << "scheme nsi_an requires M > N, got M=" << p.m_tx << " and N=" << p.n_rx;
            throw contract_violation(msg.str());
        }
        break;
    case Scheme::single_optimal:
    case Scheme::single_nullspace:
        if (p.l_tag != 1)
        {
            msg << "scheme " << scheme_name(s) << " requires L = 1, got L=" << p.l_tag;
            throw contract_violation(msg.str());
        }
        if (p.beta != 0.0)
        {
            msg << "scheme " << scheme_name(s) << " requires beta = 0, got beta=" << p.beta;
            throw contract_violation(msg.str());
        }
        if (s == Scheme::single_nullspace && p.m_tx < 2)
        {
            msg << "scheme single_nullspace requires M >= 2, got M=" << p.m_tx;
            throw contract_violation(msg.str());
        }
        break;
    case Scheme::general:
    case Scheme::no_an:
        break;
    }
}

SchemeResult run_scheme(Scheme s, const SystemChannels &ch, const SystemParams &p, const SolverConfig &cfg,
                        const Solution *carry, arma::uword single_grid_points)
{
    check_scheme_compatible(s, p);

    SchemeResult res;
    switch (s)
    {
    case Scheme::no_an:
    {
        res.solution.p_cw = p.total_power;
        res.solution.an_cov = arma::cx_mat(p.m_tx, p.m_tx, arma::fill::zeros);
        res.secrecy_bits = secrecy_rate(ch, p, res.solution);
        res.carry_state = res.solution;
        return res;
    }
    case Scheme::general:
    {
        const SolverReport rep = solve_srm_warmstarted(ch, p, cfg, carry);
        res.solution = rep.final;
        res.secrecy_bits = rep.secrecy_bits;
        res.outer_iterations = rep.iterates.empty() ? 0 : rep.iterates.back().outer;
        res.inner_iterations = rep.total_inner;
        res.warm_start = rep.warm_start;
        res.carry_state = rep.final;
        return res;
    }
    case Scheme::nbs_an:
    case Scheme::nsi_an:
    {
        const NullspaceKind kind =
            (s == Scheme::nbs_an) ? NullspaceKind::no_backscatter : NullspaceKind::no_self_interference;
        const SolverReport rep = solve_srm_nullspace(ch, p, kind, cfg, carry);
        res.solution = rep.final;
        res.secrecy_bits = rep.secrecy_bits;
        res.outer_iterations = rep.iterates.empty() ? 0 : rep.iterates.back().outer;
        res.inner_iterations = rep.total_inner;
        res.warm_start = rep.warm_start;
        res.carry_state.p_cw = rep.final.p_cw;
        res.carry_state.an_cov = rep.reduced_w;
        return res;
    }
    case Scheme::single_optimal:
    case Scheme::single_nullspace:
    {
        const SingleTagInstance inst = SingleTagInstance::from_system(ch, p);
        const SingleTagResult r =
            (s == Scheme::single_optimal) ? solve_single(inst, single_grid_points) : solve_single_nullspace(inst);
        res.solution = r.solution;
        res.secrecy_bits = r.secrecy_bits;
        res.carry_state = r.solution;
        return res;
    }
    }
    throw contract_violation("run_scheme: unknown scheme");
}

} // namespace bsec
