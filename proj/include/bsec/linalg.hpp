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

// Explicit re-symmetrization before any factorization keeps floating-point
// drift from accumulating into the Hermitian structure.
inline arma::cx_mat hermitize(const arma::cx_mat &x)
{
    return 0.5 * (x + x.t());
}

// log det of a Hermitian positive definite matrix via Cholesky of the
// symmetrized input. Natural log. Throws numerical_error (with a condition
// estimate) if the factorization fails.
double logdet_hpd(const arma::cx_mat &x, const char *what);

// Inverse of a Hermitian positive definite matrix; same failure contract.
arma::cx_mat inv_hpd(const arma::cx_mat &x, const char *what);

// |current - previous| / max(|previous|, 1e-12); the guard keeps the test
// meaningful when the reference value is zero.
inline double rel_change(double current, double previous)
{
    return std::abs(current - previous) / std::max(std::abs(previous), 1e-12);
}

inline bool is_hermitian_rel(const arma::cx_mat &x, double tol)
{
    if (!x.is_square())
        return false;
    double scale = arma::norm(x, "fro");
    return arma::norm(x - x.t(), "fro") <= tol * std::max(scale, 1e-300);
}

} // namespace bsec
