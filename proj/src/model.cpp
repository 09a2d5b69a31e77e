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

#include "bsec/model.hpp"

#include <cmath>
#include <sstream>

#include "bsec/linalg.hpp"

namespace bsec
{

namespace
{
constexpr double k_ln2 = 0.6931471805599453;

void require_dims(const arma::cx_mat &m, arma::uword rows, arma::uword cols, const char *name)
{
    if (m.n_rows != rows || m.n_cols != cols)
    {
        std::ostringstream msg;
        msg << name << " must be " << rows << "x" << cols << ", got " << m.n_rows << "x" << m.n_cols;
        throw contract_violation(msg.str());
    }
    if (!m.is_finite())
        throw contract_violation(std::string(name) + " has non-finite entries");
}
} // namespace

void SystemParams::validate() const
{
    if (m_tx == 0 || n_rx == 0 || l_tag == 0 || k_eve == 0)
        throw contract_violation("antenna counts must be positive");
    if (!(total_power >= 0.0) || !std::isfinite(total_power))
        throw contract_violation("total_power must be nonnegative and finite");
    if (!(sigma2_reader > 0.0) || !(sigma2_eve > 0.0))
        throw contract_violation("noise powers sigma2_reader and sigma2_eve must be positive");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw contract_violation("alpha must lie in [0,1]");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw contract_violation("beta must lie in [0,1]");
}

void SystemChannels::validate(const SystemParams &p) const
{
    require_dims(h_reader_to_tag, p.l_tag, p.m_tx, "h_reader_to_tag");
    require_dims(h_tag_to_reader, p.n_rx, p.l_tag, "h_tag_to_reader");
    require_dims(h_self_interference, p.n_rx, p.m_tx, "h_self_interference");
    require_dims(h_tag_to_eve, p.k_eve, p.l_tag, "h_tag_to_eve");
    require_dims(h_reader_to_eve, p.k_eve, p.m_tx, "h_reader_to_eve");
}

double Solution::power_used() const
{
    return p_cw + std::real(arma::trace(an_cov));
}

void Solution::validate(double total_power) const
{
    if (!(p_cw >= 0.0) || !std::isfinite(p_cw))
        throw contract_violation("p_cw must be nonnegative and finite");
    if (!an_cov.is_square())
        throw contract_violation("an_cov must be square");
    if (!an_cov.is_finite())
        throw contract_violation("an_cov has non-finite entries");
    if (!is_hermitian_rel(an_cov, 1e-12))
        throw contract_violation("an_cov is not Hermitian within 1e-12 relative");

    const double tr = std::real(arma::trace(an_cov));
    arma::vec ev = arma::eig_sym(hermitize(an_cov));
    if (ev.min() < -1e-10 * std::max(tr, 1e-300))
        throw contract_violation("an_cov has an eigenvalue below the PSD tolerance");
    if (power_used() > total_power + 1e-9)
        throw contract_violation("p_cw + trace(an_cov) exceeds the power budget");
}

EffectiveMatrices effective_matrices(const SystemChannels &ch)
{
    const arma::uword m = ch.h_reader_to_tag.n_cols;
    const arma::cx_vec ones(m, arma::fill::ones);
    const arma::cx_vec d = std::sqrt(1.0 / static_cast<double>(m)) * (ch.h_reader_to_tag * ones);

    EffectiveMatrices eff;
    eff.d_tp = arma::diagmat(d);
    const arma::vec gains = arma::square(arma::abs(d)); // D D^H is real diagonal
    const arma::cx_mat gd(arma::diagmat(gains), arma::mat(gains.n_elem, gains.n_elem, arma::fill::zeros));
    eff.a_mat = hermitize(ch.h_tag_to_reader * gd * ch.h_tag_to_reader.t());
    eff.b_mat = hermitize(ch.h_tag_to_eve * gd * ch.h_tag_to_eve.t());
    return eff;
}

arma::cx_mat backscatter_diag_cov(const arma::cx_mat &h, const arma::cx_mat &lambda)
{
    if (!lambda.is_square() || h.n_cols != lambda.n_rows)
    {
        std::ostringstream msg;
        msg << "backscatter_diag_cov: dimension mismatch, h is " << h.n_rows << "x" << h.n_cols
            << " but lambda is " << lambda.n_rows << "x" << lambda.n_cols;
        throw contract_violation(msg.str());
    }
    arma::vec d = arma::real(arma::diagvec(h * lambda * h.t()));
    d.clamp(0.0, arma::datum::inf); // quadratic forms of a PSD matrix
    return arma::cx_mat(arma::diagmat(d), arma::mat(d.n_elem, d.n_elem, arma::fill::zeros));
}

arma::cx_mat interference_cov_reader(const SystemChannels &ch, const SystemParams &p, const Solution &s)
{
    ch.validate(p);
    const arma::cx_mat phi = backscatter_diag_cov(ch.h_reader_to_tag, s.an_cov);
    arma::cx_mat r = p.alpha * (ch.h_tag_to_reader * phi * ch.h_tag_to_reader.t()) +
                     p.beta * (ch.h_self_interference * s.an_cov * ch.h_self_interference.t());
    r.diag() += p.sigma2_reader;
    return hermitize(r);
}

arma::cx_mat interference_cov_eve(const SystemChannels &ch, const SystemParams &p, const Solution &s)
{
    ch.validate(p);
    const arma::cx_mat phi = backscatter_diag_cov(ch.h_reader_to_tag, s.an_cov);
    arma::cx_mat r = ch.h_tag_to_eve * phi * ch.h_tag_to_eve.t() +
                     ch.h_reader_to_eve * s.an_cov * ch.h_reader_to_eve.t();
    r.diag() += p.sigma2_eve;
    return hermitize(r);
}

AchievableRates achievable_rates(const SystemChannels &ch, const SystemParams &p, const Solution &s)
{
    const EffectiveMatrices eff = effective_matrices(ch);
    const arma::cx_mat rr = interference_cov_reader(ch, p, s);
    const arma::cx_mat re = interference_cov_eve(ch, p, s);

    AchievableRates rates;
    rates.reader_bits =
        (logdet_hpd(rr + s.p_cw * eff.a_mat, "reader rate") - logdet_hpd(rr, "reader interference")) / k_ln2;
    rates.eve_bits =
        (logdet_hpd(re + s.p_cw * eff.b_mat, "eavesdropper rate") - logdet_hpd(re, "eavesdropper interference")) /
        k_ln2;
    return rates;
}

double secrecy_rate_signed(const SystemChannels &ch, const SystemParams &p, const Solution &s)
{
    const AchievableRates r = achievable_rates(ch, p, s);
    return r.reader_bits - r.eve_bits;
}

double secrecy_rate(const SystemChannels &ch, const SystemParams &p, const Solution &s)
{
    return std::max(0.0, secrecy_rate_signed(ch, p, s));
}

} // namespace bsec
