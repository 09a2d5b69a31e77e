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

#include "bsec/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "bsec/format.hpp"
#include "bsec/rng.hpp"

namespace bsec
{

void GeometryParams::validate() const
{
    if (!(d_tp > 0.0) || !(d_pr > 0.0) || !(d_pe > 0.0) || !(d_te > 0.0))
        throw contract_violation("distances must be positive");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw contract_violation("path-loss exponent must be nonnegative and finite");
}

SystemChannels generate_channels(const SystemParams &p, const GeometryParams &g, std::uint64_t seed,
                                 std::uint64_t trial_index)
{
    p.validate();
    g.validate();
    ComplexGaussianRng rng(derive_stream_seed(seed, trial_index));

    auto draw = [&rng](arma::uword rows, arma::uword cols, double scale) {
        arma::cx_mat x(rows, cols);
        for (arma::uword j = 0; j < cols; ++j)
            for (arma::uword i = 0; i < rows; ++i)
                x(i, j) = scale * rng.next();
        return x;
    };

    const double exp_half = -0.5 * g.gamma;
    SystemChannels ch;
    ch.h_reader_to_tag = draw(p.l_tag, p.m_tx, std::pow(g.d_tp, exp_half));
    ch.h_tag_to_reader = draw(p.n_rx, p.l_tag, std::pow(g.d_pr, exp_half));
    ch.h_self_interference = draw(p.n_rx, p.m_tx, 1.0);
    ch.h_tag_to_eve = draw(p.k_eve, p.l_tag, std::pow(g.d_pe, exp_half));
    ch.h_reader_to_eve = draw(p.k_eve, p.m_tx, std::pow(g.d_te, exp_half));
    return ch;
}

std::pair<SystemParams, GeometryParams> apply_swept_value(const SystemParams &p, const GeometryParams &g,
                                                          const std::string &name, double value)
{
    SystemParams pp = p;
    GeometryParams gg = g;
    auto whole = [&](const char *what) {
        if (!(value >= 1.0) || std::round(value) != value)
            throw contract_violation(std::string("swept ") + what + " values must be whole numbers >= 1");
        return static_cast<arma::uword>(value);
    };

    if (name == "total_power_dbm")
        pp.total_power = dbm_to_watts(value);
    else if (name == "alpha")
        pp.alpha = value;
    else if (name == "beta")
        pp.beta = value;
    else if (name == "m_tx")
        pp.m_tx = whole("m_tx");
    else if (name == "k_eve")
        pp.k_eve = whole("k_eve");
    else if (name == "d_pe")
        gg.d_pe = value;
    else
        throw contract_violation("unknown swept variable '" + name +
                                 "', expected one of: total_power_dbm, alpha, beta, m_tx, k_eve, d_pe");
    return {pp, gg};
}

void SweepSpec::validate() const
{
    geometry.validate();
    solver.validate();
    if (swept_values.empty())
        throw contract_violation("sweep needs at least one swept value");
    if (trials == 0)
        throw contract_violation("sweep needs at least one trial");
    if (schemes.empty())
        throw contract_violation("sweep needs at least one scheme");
    if (threads == 0)
        throw contract_violation("threads must be at least 1");
    for (double v : swept_values)
    {
        if (!std::isfinite(v))
            throw contract_violation("swept values must be finite");
        const auto [pp, gg] = apply_swept_value(params, geometry, swept_name, v);
        pp.validate();
        gg.validate();
        for (Scheme s : schemes)
            check_scheme_compatible(s, pp);
    }
}

std::string SweepSpec::canonical_string() const
{
    std::ostringstream out;
    out << "m_tx=" << params.m_tx << "\nn_rx=" << params.n_rx << "\nl_tag=" << params.l_tag
        << "\nk_eve=" << params.k_eve << "\ntotal_power=" << format_double(params.total_power)
        << "\nsigma2_reader=" << format_double(params.sigma2_reader)
        << "\nsigma2_eve=" << format_double(params.sigma2_eve) << "\nalpha=" << format_double(params.alpha)
        << "\nbeta=" << format_double(params.beta) << "\nd_tp=" << format_double(geometry.d_tp)
        << "\nd_pr=" << format_double(geometry.d_pr) << "\nd_pe=" << format_double(geometry.d_pe)
        << "\nd_te=" << format_double(geometry.d_te) << "\ngamma=" << format_double(geometry.gamma)
        << "\neps_outer=" << format_double(solver.eps_outer) << "\neps_inner=" << format_double(solver.eps_inner)
        << "\nmu0=" << format_double(solver.mu0) << "\nshrink=" << format_double(solver.shrink)
        << "\ndelta=" << format_double(solver.delta) << "\nmax_outer=" << solver.max_outer
        << "\nmax_inner=" << solver.max_inner << "\nmax_backtrack=" << solver.max_backtrack
        << "\nswept_name=" << swept_name << "\nswept_values=";
    for (std::size_t i = 0; i < swept_values.size(); ++i)
        out << (i ? "," : "") << format_double(swept_values[i]);
    out << "\ntrials=" << trials << "\nschemes=";
    for (std::size_t i = 0; i < schemes.size(); ++i)
        out << (i ? "," : "") << scheme_name(schemes[i]);
    out << "\nseed=" << master_seed << "\nsingle_grid_points=" << single_grid_points << "\n";
    return out.str();
}

std::uint64_t SweepSpec::config_hash() const
{
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_string())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace detail
{

Aggregate aggregate_cells(const std::vector<TrialCell> &cells)
{
    Aggregate agg;
    arma::uword n = 0;
    double sum_cs = 0.0;
    double sum_ms = 0.0;
    for (const TrialCell &c : cells)
    {
        if (c.failed)
        {
            ++agg.failures;
            continue;
        }
        ++n;
        sum_cs += c.secrecy_bits;
        sum_ms += c.solve_ms;
    }
    if (n == 0)
        return agg;
    agg.mean_cs = sum_cs / static_cast<double>(n);
    agg.mean_ms = sum_ms / static_cast<double>(n);
    if (n > 1)
    {
        double ss = 0.0;
        for (const TrialCell &c : cells)
            if (!c.failed)
                ss += (c.secrecy_bits - agg.mean_cs) * (c.secrecy_bits - agg.mean_cs);
        agg.stderr_cs = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return agg;
}

} // namespace detail

namespace
{
// Trials are the unit of parallel work: one worker owns a whole trial so the
// per-trial warm-start chain across sweep points stays sequential.
void parallel_for_trials(arma::uword trials, arma::uword threads, const std::function<void(arma::uword)> &body)
{
    threads = std::max<arma::uword>(1, std::min(threads, trials));
    if (threads == 1)
    {
        for (arma::uword t = 0; t < trials; ++t)
            body(t);
        return;
    }

    std::atomic<arma::uword> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&]() {
        try
        {
            for (arma::uword t; (t = next.fetch_add(1)) < trials;)
                body(t);
        }
        catch (const std::exception &e)
        {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (first_error.empty())
                first_error = e.what();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (arma::uword i = 0; i < threads; ++i)
        pool.emplace_back(worker);
    for (std::thread &th : pool)
        th.join();
    if (!first_error.empty())
        throw numerical_error("sweep worker failed: " + first_error);
}
} // namespace

SweepResult run_sweep(const SweepSpec &spec)
{
    spec.validate();

    const arma::uword npoints = spec.swept_values.size();
    const arma::uword nschemes = spec.schemes.size();
    const arma::uword ntrials = spec.trials;

    std::vector<std::pair<SystemParams, GeometryParams>> points;
    points.reserve(npoints);
    for (double v : spec.swept_values)
        points.push_back(apply_swept_value(spec.params, spec.geometry, spec.swept_name, v));

    std::vector<detail::TrialCell> cells(nschemes * npoints * ntrials);
    auto cell_index = [&](arma::uword si, arma::uword pi, arma::uword ti) {
        return (si * npoints + pi) * ntrials + ti;
    };

    // Solutions are carried forward across points only along the power axis,
    // where the feasible set grows and the warm start makes per-trial secrecy
    // rates monotone in P. On other axes each point is solved independently,
    // so results at a point never depend on which other points were swept.
    const bool chain_points = (spec.swept_name == "total_power_dbm");

    parallel_for_trials(ntrials, spec.threads, [&](arma::uword ti) {
        std::vector<std::optional<Solution>> carry(nschemes);
        for (arma::uword pi = 0; pi < npoints; ++pi)
        {
            const auto &[pp, gg] = points[pi];
            const SystemChannels ch = generate_channels(pp, gg, spec.master_seed, ti);
            for (arma::uword si = 0; si < nschemes; ++si)
            {
                detail::TrialCell &cell = cells[cell_index(si, pi, ti)];
                const auto t0 = std::chrono::steady_clock::now();
                try
                {
                    const SchemeResult res =
                        run_scheme(spec.schemes[si], ch, pp, spec.solver,
                                   (chain_points && carry[si]) ? &*carry[si] : nullptr, spec.single_grid_points);
                    const auto t1 = std::chrono::steady_clock::now();
                    cell.secrecy_bits = res.secrecy_bits;
                    cell.solve_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                    carry[si] = res.carry_state;
                }
                catch (const std::exception &)
                {
                    cell.failed = true; // excluded and counted, never resampled
                }
            }
        }
    });

    SweepResult result;
    result.swept_name = spec.swept_name;
    result.master_seed = spec.master_seed;
    result.config_hash = spec.config_hash();
    result.report_timing = spec.report_timing;
    result.rows.reserve(nschemes * npoints);
    for (arma::uword si = 0; si < nschemes; ++si)
    {
        for (arma::uword pi = 0; pi < npoints; ++pi)
        {
            std::vector<detail::TrialCell> slice(cells.begin() + cell_index(si, pi, 0),
                                                 cells.begin() + cell_index(si, pi, 0) + ntrials);
            const detail::Aggregate agg = detail::aggregate_cells(slice);
            SweepRow row;
            row.scheme = spec.schemes[si];
            row.swept_value = spec.swept_values[pi];
            row.mean_cs = agg.mean_cs;
            row.stderr_cs = agg.stderr_cs;
            row.trials = ntrials;
            row.failures = agg.failures;
            row.mean_solve_ms = agg.mean_ms;
            row.degraded = static_cast<double>(agg.failures) > 0.01 * static_cast<double>(ntrials);
            result.rows.push_back(row);
        }
    }
    return result;
}

std::string sweep_csv(const SweepResult &result)
{
    std::string out = "scheme,swept_name,swept_value,mean_cs_bps_hz,stderr_cs,trials,failures,mean_solve_ms,seed\n";
    for (const SweepRow &row : result.rows)
    {
        out += scheme_name(row.scheme);
        out += ',';
        out += result.swept_name;
        out += ',';
        out += format_double(row.swept_value);
        out += ',';
        out += format_double(row.mean_cs);
        out += ',';
        out += format_double(row.stderr_cs);
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        out += std::to_string(row.failures);
        out += ',';
        out += result.report_timing ? format_double(row.mean_solve_ms) : std::string("0");
        out += ',';
        out += std::to_string(result.master_seed);
        out += '\n';
    }
    return out;
}

} // namespace bsec
