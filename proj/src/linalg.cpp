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

#include "bsec/linalg.hpp"

#include <sstream>

namespace bsec
{

namespace
{
[[noreturn]] void throw_factorization_error(const char *what, const arma::cx_mat &sym)
{
    std::ostringstream msg;
    msg << what << ": matrix is not positive definite (size " << sym.n_rows << "x" << sym.n_cols;
    double rc = arma::rcond(sym);
    msg << ", rcond " << rc << ")";
    throw numerical_error(msg.str());
}
} // namespace

double logdet_hpd(const arma::cx_mat &x, const char *what)
{
    const arma::cx_mat sym = hermitize(x);
    arma::cx_mat r;
    if (!arma::chol(r, sym))
        throw_factorization_error(what, sym);
    return 2.0 * arma::accu(arma::log(arma::real(r.diag())));
}

arma::cx_mat inv_hpd(const arma::cx_mat &x, const char *what)
{
    const arma::cx_mat sym = hermitize(x);
    arma::cx_mat out;
    if (!arma::inv_sympd(out, sym))
        throw_factorization_error(what, sym);
    return out;
}

} // namespace bsec
