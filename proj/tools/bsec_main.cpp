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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bsec/config.hpp"
#include "bsec/format.hpp"
#include "bsec/validation.hpp"

namespace
{

struct SolveArgs
{
    std::string config_path;
    std::string scheme = "general";
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::string dump_path;
};

struct SweepArgs
{
    std::string config_path;
    bool no_timing = false;
};

struct ValidateArgs
{
    std::string suite;
    std::uint64_t seed = 0;
};

// Flag overrides applied on top of the (optional) config file.
struct Overrides
{
    CLI::Option *m = nullptr, *n = nullptr, *l = nullptr, *k = nullptr;
    CLI::Option *p_dbm = nullptr, *sig_r = nullptr, *sig_e = nullptr, *alpha = nullptr, *beta = nullptr;
    CLI::Option *gamma = nullptr, *d_tp = nullptr, *d_pr = nullptr, *d_pe = nullptr, *d_te = nullptr;
    CLI::Option *sweep_variable = nullptr, *sweep_values = nullptr, *trials = nullptr, *schemes = nullptr;
    CLI::Option *seed = nullptr, *threads = nullptr, *output = nullptr;

    arma::uword v_m = 0, v_n = 0, v_l = 0, v_k = 0, v_trials = 0, v_threads = 0;
    double v_p = 0, v_sr = 0, v_se = 0, v_alpha = 0, v_beta = 0, v_gamma = 0;
    double v_dtp = 0, v_dpr = 0, v_dpe = 0, v_dte = 0;
    std::string v_sweep_variable, v_sweep_values, v_schemes, v_output;
    std::uint64_t v_seed = 0;

    void attach(CLI::App *cmd, bool with_sweep)
    {
        m = cmd->add_option("--m", v_m, "reader transmit antennas");
        n = cmd->add_option("--n", v_n, "reader receive antennas");
        l = cmd->add_option("--l", v_l, "tag antennas");
        k = cmd->add_option("--k", v_k, "eavesdropper antennas");
        p_dbm = cmd->add_option("--p-dbm", v_p, "total transmit power, dBm");
        sig_r = cmd->add_option("--sigma-r-dbm", v_sr, "reader noise power, dBm");
        sig_e = cmd->add_option("--sigma-e-dbm", v_se, "eavesdropper noise power, dBm");
        alpha = cmd->add_option("--alpha", v_alpha, "backscattered-AN attenuation");
        beta = cmd->add_option("--beta", v_beta, "self-interference attenuation");
        gamma = cmd->add_option("--gamma", v_gamma, "path-loss exponent");
        d_tp = cmd->add_option("--d-tp", v_dtp, "reader-tag distance, m");
        d_pr = cmd->add_option("--d-pr", v_dpr, "tag-reader distance, m");
        d_pe = cmd->add_option("--d-pe", v_dpe, "tag-eavesdropper distance, m");
        d_te = cmd->add_option("--d-te", v_dte, "reader-eavesdropper distance, m");
        if (with_sweep)
        {
            sweep_variable = cmd->add_option("--sweep-variable", v_sweep_variable, "swept parameter name");
            sweep_values = cmd->add_option("--sweep-values", v_sweep_values, "comma-separated swept values");
            trials = cmd->add_option("--trials", v_trials, "Monte-Carlo trials per point");
            schemes = cmd->add_option("--schemes", v_schemes, "comma-separated scheme list");
            seed = cmd->add_option("--seed", v_seed, "master seed (default 0)");
            threads = cmd->add_option("--threads", v_threads, "worker threads");
            output = cmd->add_option("-o,--output", v_output, "output CSV path");
        }
    }

    void apply(bsec::RunConfig &cfg) const
    {
        if (m && *m)
            cfg.m_tx = v_m;
        if (n && *n)
            cfg.n_rx = v_n;
        if (l && *l)
            cfg.l_tag = v_l;
        if (k && *k)
            cfg.k_eve = v_k;
        if (p_dbm && *p_dbm)
            cfg.total_power_dbm = v_p;
        if (sig_r && *sig_r)
            cfg.sigma2_reader_dbm = v_sr;
        if (sig_e && *sig_e)
            cfg.sigma2_eve_dbm = v_se;
        if (alpha && *alpha)
            cfg.alpha = v_alpha;
        if (beta && *beta)
            cfg.beta = v_beta;
        if (gamma && *gamma)
            cfg.gamma = v_gamma;
        if (d_tp && *d_tp)
            cfg.d_tp = v_dtp;
        if (d_pr && *d_pr)
            cfg.d_pr = v_dpr;
        if (d_pe && *d_pe)
            cfg.d_pe = v_dpe;
        if (d_te && *d_te)
            cfg.d_te = v_dte;
        if (sweep_variable && *sweep_variable)
            cfg.set("sweep_variable", v_sweep_variable);
        if (sweep_values && *sweep_values)
            cfg.set("sweep_values", v_sweep_values);
        if (trials && *trials)
            cfg.trials = v_trials;
        if (schemes && *schemes)
            cfg.set("schemes", v_schemes);
        if (seed && *seed)
            cfg.seed = v_seed;
        if (threads && *threads)
            cfg.threads = v_threads;
        if (output && *output)
            cfg.output = v_output;
    }
};

bsec::RunConfig load_config(const std::string &path)
{
    return path.empty() ? bsec::RunConfig{} : bsec::RunConfig::from_file(path);
}

int cmd_solve(const SolveArgs &args, const Overrides &ov)
{
    bsec::RunConfig cfg = load_config(args.config_path);
    ov.apply(cfg);

    const auto scheme = bsec::scheme_from_name(args.scheme);
    if (!scheme)
        throw bsec::contract_violation("unknown scheme '" + args.scheme +
                                       "', expected one of: general, nbs_an, nsi_an, no_an, single_optimal, "
                                       "single_nullspace");

    const bsec::SystemParams params = cfg.system_params();
    const bsec::GeometryParams geometry = cfg.geometry_params();
    bsec::check_scheme_compatible(*scheme, params);
    cfg.solver.validate();

    const bsec::SystemChannels ch = bsec::generate_channels(params, geometry, args.seed, args.trial);
    const bsec::SchemeResult res =
        bsec::run_scheme(*scheme, ch, params, cfg.solver, nullptr, cfg.single_grid_points);

    std::cout << "scheme: " << bsec::scheme_name(*scheme) << "\n"
              << "seed: " << args.seed << "\n"
              << "trial: " << args.trial << "\n"
              << "secrecy_rate_bps_hz: " << bsec::format_double(res.secrecy_bits) << "\n"
              << "p_cw_watts: " << bsec::format_double(res.solution.p_cw) << "\n"
              << "an_trace_watts: " << bsec::format_double(std::real(arma::trace(res.solution.an_cov))) << "\n"
              << "outer_iterations: " << res.outer_iterations << "\n"
              << "inner_iterations: " << res.inner_iterations << "\n"
              << "warm_start: " << bsec::warm_start_name(res.warm_start) << "\n";

    if (!args.dump_path.empty())
    {
        std::ofstream out(args.dump_path);
        if (!out)
            throw bsec::contract_violation("cannot open dump path '" + args.dump_path + "'");
        const arma::cx_mat &lam = res.solution.an_cov;
        for (arma::uword i = 0; i < lam.n_rows; ++i)
        {
            for (arma::uword j = 0; j < lam.n_cols; ++j)
            {
                if (j)
                    out << ',';
                out << bsec::format_double(std::real(lam(i, j))) << ',' << bsec::format_double(std::imag(lam(i, j)));
            }
            out << '\n';
        }
    }
    return 0;
}

int cmd_sweep(const SweepArgs &args, const Overrides &ov)
{
    bsec::RunConfig cfg = load_config(args.config_path);
    ov.apply(cfg);
    if (args.no_timing)
        cfg.report_timing = false;
    if (cfg.sweep_values.empty())
        throw bsec::contract_violation("sweep needs sweep_values (config key or --sweep-values)");
    if (cfg.schemes.empty())
        throw bsec::contract_violation("sweep needs schemes (config key or --schemes)");

    const bsec::SweepSpec spec = cfg.sweep_spec();
    const bsec::SweepResult result = bsec::run_sweep(spec);

    for (const bsec::SweepRow &row : result.rows)
        if (row.degraded)
            std::cerr << "warning: scheme " << bsec::scheme_name(row.scheme) << " at " << result.swept_name << "="
                      << bsec::format_double(row.swept_value) << " had " << row.failures
                      << " failed trials (>1%), result degraded\n";

    std::ofstream out(cfg.output, std::ios::binary);
    if (!out)
        throw bsec::contract_violation("cannot open output path '" + cfg.output + "'");
    out << bsec::sweep_csv(result);
    out.close();
    if (!out)
        throw bsec::contract_violation("failed writing output path '" + cfg.output + "'");

    std::cout << "wrote " << result.rows.size() << " rows to " << cfg.output << " (config hash "
              << result.config_hash << ")\n";
    return 0;
}

int cmd_validate(const ValidateArgs &args)
{
    const bsec::validation::SuiteResult res = bsec::validation::run_suite(args.suite, args.seed);
    for (const bsec::validation::Check &c : res.checks)
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": measured " << bsec::format_double(c.measured)
                  << " vs tolerance " << bsec::format_double(c.tolerance) << "\n";
    if (!res.all_passed())
    {
        for (const bsec::validation::Check &c : res.checks)
            if (!c.pass)
            {
                std::cerr << "first violated check: " << c.name << " (measured " << bsec::format_double(c.measured)
                          << ", tolerated " << bsec::format_double(c.tolerance) << ")\n";
                break;
            }
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"achievable secrecy rates and artificial-noise design for MIMO backscatter links"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    Overrides solve_ov;
    CLI::App *solve = app.add_subcommand("solve", "solve one channel realization");
    solve->add_option("--config", solve_args.config_path, "config file (flat key = value)");
    solve->add_option("--scheme", solve_args.scheme, "general|nbs_an|nsi_an|no_an|single_optimal|single_nullspace");
    solve->add_option("--seed", solve_args.seed, "channel seed (default 0)");
    solve->add_option("--trial", solve_args.trial, "trial index within the seed (default 0)");
    solve->add_option("--dump-solution", solve_args.dump_path, "write the AN covariance as CSV (re,im cell pairs)");
    solve_ov.attach(solve, false);

    SweepArgs sweep_args;
    Overrides sweep_ov;
    CLI::App *sweep = app.add_subcommand("sweep", "run a Monte-Carlo parameter sweep and write CSV");
    sweep->add_option("--config", sweep_args.config_path, "config file (flat key = value)");
    sweep->add_flag("--no-timing", sweep_args.no_timing, "write 0 in the timing column (bitwise-reproducible CSV)");
    sweep_ov.attach(sweep, true);

    ValidateArgs validate_args;
    CLI::App *validate = app.add_subcommand("validate", "run oracle-backed property checks");
    validate->add_option("--suite", validate_args.suite, "gradients|projection|single_tag|equivalence|monotonicity")
        ->required();
    validate->add_option("--seed", validate_args.seed, "seed for the check instances (default 0)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad flags are config errors
    }

    try
    {
        if (solve->parsed())
            return cmd_solve(solve_args, solve_ov);
        if (sweep->parsed())
            return cmd_sweep(sweep_args, sweep_ov);
        if (validate->parsed())
            return cmd_validate(validate_args);
        return 2;
    }
    catch (const bsec::contract_violation &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const bsec::numerical_error &e)
    {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
