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

#include "bsec/config.hpp"

#include <fstream>
#include <sstream>

#include "bsec/format.hpp"

namespace bsec
{

namespace
{
std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double parse_double(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw contract_violation("config key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

arma::uword parse_uword(const std::string &key, const std::string &value)
{
    const double v = parse_double(key, value);
    if (v < 0.0 || std::round(v) != v)
        throw contract_violation("config key '" + key + "': expected a nonnegative whole number, got '" + value + "'");
    return static_cast<arma::uword>(v);
}

std::uint64_t parse_u64(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return static_cast<std::uint64_t>(v);
    }
    catch (const std::exception &)
    {
        throw contract_violation("config key '" + key + "': cannot parse '" + value + "' as an unsigned integer");
    }
}

bool parse_bool(const std::string &key, const std::string &value)
{
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw contract_violation("config key '" + key + "': expected true/false, got '" + value + "'");
}
} // namespace

void RunConfig::set(const std::string &key, const std::string &value)
{
    if (key == "m_tx")
        m_tx = parse_uword(key, value);
    else if (key == "n_rx")
        n_rx = parse_uword(key, value);
    else if (key == "l_tag")
        l_tag = parse_uword(key, value);
    else if (key == "k_eve")
        k_eve = parse_uword(key, value);
    else if (key == "total_power_dbm")
        total_power_dbm = parse_double(key, value);
    else if (key == "sigma2_reader_dbm")
        sigma2_reader_dbm = parse_double(key, value);
    else if (key == "sigma2_eve_dbm")
        sigma2_eve_dbm = parse_double(key, value);
    else if (key == "alpha")
        alpha = parse_double(key, value);
    else if (key == "beta")
        beta = parse_double(key, value);
    else if (key == "d_tp")
        d_tp = parse_double(key, value);
    else if (key == "d_pr")
        d_pr = parse_double(key, value);
    else if (key == "d_pe")
        d_pe = parse_double(key, value);
    else if (key == "d_te")
        d_te = parse_double(key, value);
    else if (key == "gamma")
        gamma = parse_double(key, value);
    else if (key == "eps_outer")
        solver.eps_outer = parse_double(key, value);
    else if (key == "eps_inner")
        solver.eps_inner = parse_double(key, value);
    else if (key == "mu0")
        solver.mu0 = parse_double(key, value);
    else if (key == "shrink")
        solver.shrink = parse_double(key, value);
    else if (key == "delta")
        solver.delta = parse_double(key, value);
    else if (key == "max_outer")
        solver.max_outer = parse_uword(key, value);
    else if (key == "max_inner")
        solver.max_inner = parse_uword(key, value);
    else if (key == "max_backtrack")
        solver.max_backtrack = parse_uword(key, value);
    else if (key == "sweep_variable")
        sweep_variable = value;
    else if (key == "sweep_values")
    {
        sweep_values.clear();
        for (const std::string &item : split_list(value))
            sweep_values.push_back(parse_double(key, item));
    }
    else if (key == "trials")
        trials = parse_uword(key, value);
    else if (key == "schemes")
    {
        schemes.clear();
        for (const std::string &item : split_list(value))
        {
            const auto s = scheme_from_name(item);
            if (!s)
                throw contract_violation("config key 'schemes': unknown scheme '" + item + "'");
            schemes.push_back(*s);
        }
    }
    else if (key == "seed")
        seed = parse_u64(key, value);
    else if (key == "threads")
        threads = parse_uword(key, value);
    else if (key == "output")
        output = value;
    else if (key == "report_timing")
        report_timing = parse_bool(key, value);
    else if (key == "single_grid_points")
        single_grid_points = parse_uword(key, value);
    else
        throw contract_violation("unknown config key '" + key + "'");
}

RunConfig RunConfig::from_stream(std::istream &in, const std::string &origin)
{
    RunConfig cfg;
    std::string line;
    arma::uword line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw contract_violation(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw contract_violation("cannot open config file '" + path + "'");
    return from_stream(in, path);
}

SystemParams RunConfig::system_params() const
{
    SystemParams p;
    p.m_tx = m_tx;
    p.n_rx = n_rx;
    p.l_tag = l_tag;
    p.k_eve = k_eve;
    p.total_power = dbm_to_watts(total_power_dbm);
    p.sigma2_reader = dbm_to_watts(sigma2_reader_dbm);
    p.sigma2_eve = dbm_to_watts(sigma2_eve_dbm);
    p.alpha = alpha;
    p.beta = beta;
    p.validate();
    return p;
}

GeometryParams RunConfig::geometry_params() const
{
    GeometryParams g;
    g.d_tp = d_tp;
    g.d_pr = d_pr;
    g.d_pe = d_pe;
    g.d_te = d_te;
    g.gamma = gamma;
    g.validate();
    return g;
}

SweepSpec RunConfig::sweep_spec() const
{
    SweepSpec spec;
    spec.params = system_params();
    spec.geometry = geometry_params();
    spec.solver = solver;
    spec.swept_name = sweep_variable;
    spec.swept_values = sweep_values;
    spec.trials = trials;
    spec.schemes = schemes;
    spec.master_seed = seed;
    spec.threads = std::max<arma::uword>(1, threads);
    spec.report_timing = report_timing;
    spec.single_grid_points = single_grid_points;
    spec.validate();
    return spec;
}

} // namespace bsec
