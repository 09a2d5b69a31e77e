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

#pragma once

#include <armadillo>

#include "bsec/errors.hpp"

namespace bsec
{

// Antenna counts and radio parameters. Powers are linear watts everywhere in
// the library; dBm conversion happens only at the CLI boundary.
struct SystemParams
{
    arma::uword m_tx = 3;  // reader transmit antennas (M)
    arma::uword n_rx = 2;  // reader receive antennas (N)
    arma::uword l_tag = 2; // tag antennas (L)
    arma::uword k_eve = 3; // eavesdropper antennas (K)

    double total_power = 1e-2;   // watts
    double sigma2_reader = 1e-5; // AWGN power at the reader, watts
    double sigma2_eve = 1e-5;    // AWGN power at the eavesdropper, watts
    double alpha = 0.6;          // backscattered-AN attenuation at the reader, [0,1]
    double beta = 0.3;           // self-interference attenuation at the reader, [0,1]

    void validate() const; // throws contract_violation
};

// The five links of the reader/tag/eavesdropper geometry.
struct SystemChannels
{
    arma::cx_mat h_reader_to_tag;     // L x M
    arma::cx_mat h_tag_to_reader;     // N x L
    arma::cx_mat h_self_interference; // N x M
    arma::cx_mat h_tag_to_eve;        // K x L
    arma::cx_mat h_reader_to_eve;     // K x M

    void validate(const SystemParams &p) const; // dimension and finiteness checks
};

// A power split: CW power plus the AN spatial covariance.
struct Solution
{
    double p_cw = 0.0;    // watts
    arma::cx_mat an_cov;  // Hermitian PSD, watts

    double power_used() const;
    void validate(double total_power) const; // throws contract_violation
};

// Derived quantities that appear in every rate evaluation: the effective
// diagonal CW-backscatter gain and the fixed CW signature matrices at the
// reader and the eavesdropper.
struct EffectiveMatrices
{
    arma::cx_mat d_tp;  // L x L diagonal
    arma::cx_mat a_mat; // N x N Hermitian PSD
    arma::cx_mat b_mat; // K x K Hermitian PSD
};

EffectiveMatrices effective_matrices(const SystemChannels &ch);

// diag(h * lambda * h^H) as a real nonnegative diagonal matrix: the covariance
// contribution of AN that is modulated and re-scattered by the tag. The
// closed form needs no sampling of the AN vector.
arma::cx_mat backscatter_diag_cov(const arma::cx_mat &h, const arma::cx_mat &lambda);

// Interference-plus-noise covariance at the reader:
//   alpha * H_pr diag(..) H_pr^H + beta * H_tr lambda H_tr^H + sigma_r^2 I
arma::cx_mat interference_cov_reader(const SystemChannels &ch, const SystemParams &p, const Solution &s);

// Interference-plus-noise covariance at the eavesdropper (no attenuation
// factors; the eavesdropper cannot cancel the AN).
arma::cx_mat interference_cov_eve(const SystemChannels &ch, const SystemParams &p, const Solution &s);

struct AchievableRates
{
    double reader_bits; // bits/s/Hz
    double eve_bits;    // bits/s/Hz
};

// Both rates, evaluated stably as log-det differences of positive definite
// pencils rather than through an explicit inverse inside the determinant.
AchievableRates achievable_rates(const SystemChannels &ch, const SystemParams &p, const Solution &s);

// reader rate minus eavesdropper rate, unclamped (useful for traces)
double secrecy_rate_signed(const SystemChannels &ch, const SystemParams &p, const Solution &s);

// [C_r - C_e]^+
double secrecy_rate(const SystemChannels &ch, const SystemParams &p, const Solution &s);

} // namespace bsec
