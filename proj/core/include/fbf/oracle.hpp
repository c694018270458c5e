// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "fbf/fbf.hpp"

namespace fbf {

using BifunctionFn = std::function<double(const Point&, const Point&)>;

/// Largest dimension the grid solvers accept.
inline constexpr Index kOracleMaxDim = 4;

/// max over grid y in K of (-f(x, y))_+. Zero certifies x as an
/// equilibrium at grid resolution.
double ep_residual(const BifunctionFn& f, const Point& x, const BoxSet& k, int grid);

/// max over grid y in K of (f(y, x))_+, the Minty residual.
double dual_ep_residual(const BifunctionFn& f, const Point& x, const BoxSet& k,
                        int grid);

/// All grid points of K with ep_residual <= tol, lexicographic order.
/// Throws UsageError when dim(K) > kOracleMaxDim.
std::vector<Point> solve_ep_grid(const BifunctionFn& f, const BoxSet& k, int grid,
                                 double tol);

/// Two-stage search: S = solve_ep_grid(f), then the points x of S with
/// max_{y in S} (-g(x, y))_+ <= tol. Throws OracleError when S is empty.
std::vector<Point> solve_bep_grid(const BepInstance& inst, int grid, double tol);

/// Grid spacing of K along its widest axis for `grid` points per axis.
double grid_spacing(const BoxSet& k, int grid);

}  // namespace fbf
