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

#include <vector>

#include <armadillo>

#include "bsec/model.hpp"

namespace bsec
{

// Single-antenna-tag geometry with an MRC eavesdropper and perfect
// self-interference AN cancellation (the model this module solves globally).
// All channels from/to the tag are vectors here.
struct SingleTagInstance
{
    arma::cx_vec h_tp; // M, reader-to-tag
    arma::cx_vec h_pr; // N, tag-to-reader
    arma::cx_vec h_pe; // K, tag-to-eavesdropper
    arma::cx_mat h_te; // K x M, reader-to-eavesdropper
    double alpha = 0.6;
    double sigma2_reader = 1e-5;
    double sigma2_eve = 1e-5;
    double total_power = 1e-2;
    std::complex<double> d_tp; // sqrt(1/M) * h_tp^H * 1_M

    // Builds from the general model types; requires L == 1 and beta == 0.
    static SingleTagInstance from_system(const SystemChannels &ch, const SystemParams &p);

    void validate() const;
};

// Geometry of the two directions the AN design trades off: the reader-to-tag
// direction d1 and the effective eavesdropper direction d2, their overlap
// kappa = |d1^H d2| and relative phase.
struct TCoordinates
{
    arma::cx_vec d1;
    arma::cx_vec d2;
    double kappa = 0.0;
    double phi = 0.0; // argument of d2^H d1, in (-pi, pi]
    bool eve_coupled = true;        // ||H_te^H h_pe|| > 0; otherwise d2 is an arbitrary unit vector orthogonal to d1
    bool degenerate_aligned = false; // kappa == 1 within 1e-10
};

TCoordinates t_coordinates(const SingleTagInstance &inst);

// Maximal |d2^H v|^2 over unit v with |d1^H v|^2 = t, in closed form.
// Throws degenerate_alignment when kappa == 1 within 1e-10.
double r_of_t(const TCoordinates &tc, double t);

// The unit vector achieving r_of_t. Same degenerate-alignment contract.
arma::cx_vec v_of_t(const TCoordinates &tc, double t);

// Coefficients of the single-variable objective y^t(P_s) = (1 + a P_s / (1 + b P_s)) / (1 + c P_s / (1 + d P_s)).
struct PsObjective
{
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    double y(double p_s) const;
};

// The objective restricted to a given t (using the optimal AN direction for
// that t, with the documented fallbacks for the degenerate geometries).
PsObjective ps_objective(const SingleTagInstance &inst, const TCoordinates &tc, double t);

// Stationary points of y^t on (0, P) from the closed-form quadratic, plus the
// boundary P; intersected with [0, P]. Degenerate quadratics fall back to the
// linear root or to {P} alone.
std::vector<double> ps_candidates(const SingleTagInstance &inst, const TCoordinates &tc, double t);

struct SingleTagResult
{
    Solution solution;        // rank-one AN covariance, full power budget used
    double secrecy_bits = 0.0;
    double t_star = 0.0;
    double objective = 1.0;   // best y value (the rate ratio)
};

// Global solver: one-dimensional search over t (uniform grid plus local
// golden-section refinement) with the exact per-t power allocation.
SingleTagResult solve_single(const SingleTagInstance &inst, arma::uword grid_points = 2001);

// The t = 0 restriction (AN in the nullspace of the reader-to-tag channel):
// one power allocation solve, no search.
SingleTagResult solve_single_nullspace(const SingleTagInstance &inst);

} // namespace bsec
