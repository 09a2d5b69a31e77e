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

#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "bsec/config.hpp"
#include "bsec/format.hpp"

using namespace bsec;

TEST_CASE("defaults mirror the standard simulation settings")
{
    const RunConfig cfg;
    const SystemParams p = cfg.system_params();
    REQUIRE(p.m_tx == 3);
    REQUIRE(p.n_rx == 2);
    REQUIRE(p.l_tag == 2);
    REQUIRE(p.k_eve == 3);
    REQUIRE(std::abs(p.total_power - 0.01) < 1e-15);   // 10 dBm
    REQUIRE(std::abs(p.sigma2_reader - 1e-5) < 1e-18); // -20 dBm
    REQUIRE(p.alpha == 0.6);
    REQUIRE(p.beta == 0.3);

    const GeometryParams g = cfg.geometry_params();
    REQUIRE(g.d_tp == 2.0);
    REQUIRE(g.gamma == 2.0);

    REQUIRE(cfg.solver.eps_outer == 1e-3);
    REQUIRE(cfg.solver.eps_inner == 1e-5);
    REQUIRE(cfg.solver.mu0 == 1.0);
    REQUIRE(cfg.solver.shrink == 0.5);
    REQUIRE(cfg.solver.delta == 0.1);
    REQUIRE(cfg.trials == 1000);
    REQUIRE(cfg.seed == 0);
}

TEST_CASE("dbm conversion")
{
    REQUIRE(std::abs(dbm_to_watts(30.0) - 1.0) < 1e-15);
    REQUIRE(std::abs(dbm_to_watts(10.0) - 0.01) < 1e-17);
    REQUIRE(std::abs(dbm_to_watts(-20.0) - 1e-5) < 1e-19);
}

TEST_CASE("config stream parsing with comments and whitespace")
{
    std::istringstream in("# run setup\n"
                          "m_tx = 4\n"
                          "  alpha=0.25   # partial cancellation\n"
                          "\n"
                          "sweep_values = -3, 1, 5\n"
                          "schemes = general , no_an\n"
                          "report_timing = false\n"
                          "seed = 42\n");
    const RunConfig cfg = RunConfig::from_stream(in, "test");
    REQUIRE(cfg.m_tx == 4);
    REQUIRE(cfg.alpha == 0.25);
    REQUIRE(cfg.sweep_values == std::vector<double>{-3.0, 1.0, 5.0});
    REQUIRE(cfg.schemes == std::vector<Scheme>{Scheme::general, Scheme::no_an});
    REQUIRE(cfg.report_timing == false);
    REQUIRE(cfg.seed == 42);
}

TEST_CASE("unknown keys are rejected by name")
{
    std::istringstream in("powerr_dbm = 10\n");
    try
    {
        RunConfig::from_stream(in, "test");
        FAIL("expected contract_violation");
    }
    catch (const contract_violation &e)
    {
        REQUIRE(std::string(e.what()).find("powerr_dbm") != std::string::npos);
    }
}

TEST_CASE("malformed values name the key")
{
    RunConfig cfg;
    REQUIRE_THROWS_AS(cfg.set("alpha", "fast"), contract_violation);
    REQUIRE_THROWS_AS(cfg.set("m_tx", "2.5"), contract_violation);
    REQUIRE_THROWS_AS(cfg.set("schemes", "general,bogus"), contract_violation);
    REQUIRE_THROWS_AS(cfg.set("report_timing", "maybe"), contract_violation);

    std::istringstream in("just words\n");
    REQUIRE_THROWS_AS(RunConfig::from_stream(in, "test"), contract_violation);
}

TEST_CASE("sweep spec assembly validates the combination")
{
    RunConfig cfg;
    cfg.set("sweep_variable", "alpha");
    cfg.set("sweep_values", "0,0.5");
    cfg.set("schemes", "no_an");
    cfg.set("trials", "2");
    const SweepSpec spec = cfg.sweep_spec();
    REQUIRE(spec.swept_name == "alpha");
    REQUIRE(spec.trials == 2);

    cfg.set("l_tag", "2");
    cfg.set("schemes", "single_optimal"); // requires L = 1
    REQUIRE_THROWS_AS(cfg.sweep_spec(), contract_violation);
}

TEST_CASE("config hash is stable and sensitive")
{
    RunConfig a;
    a.set("sweep_variable", "alpha");
    a.set("sweep_values", "0,1");
    a.set("schemes", "no_an");
    RunConfig b = a;
    REQUIRE(a.sweep_spec().config_hash() == b.sweep_spec().config_hash());
    b.set("alpha", "0.61");
    REQUIRE(a.sweep_spec().config_hash() != b.sweep_spec().config_hash());
}

TEST_CASE("shortest round-trip formatting for CSV fields")
{
    REQUIRE(format_double(0.25) == "0.25");
    REQUIRE(format_double(1e-5) == "1e-05");
    REQUIRE(format_double(0.0) == "0");
    const double v = 0.30844060178259947;
    REQUIRE(std::stod(format_double(v)) == v);
}
