// SPDX-License-Identifier: Apache-2.0
#include "fbf/oracle.hpp"

#include <algorithm>
#include <string>

namespace fbf {

namespace {

void check_grid_args(const BoxSet& k, int grid, const char* where) {
  if (grid < 2) throw UsageError(std::string(where) + ": grid must be >= 2");
  if (k.dim() > kOracleMaxDim) {
    throw UsageError(std::string(where) + ": dimension " + std::to_string(k.dim()) +
                     " exceeds the oracle limit of " + std::to_string(kOracleMaxDim));
  }
}

// Vertices first: affine bifunctions are usually violated at a corner,
// which lets non-solutions exit after a handful of probes.
std::vector<Point> probe_order(const BoxSet& k, int grid) {
  std::vector<Point> probes = k.vertices();
  std::vector<Point> g = k.grid(grid);
  probes.insert(probes.end(), std::make_move_iterator(g.begin()),
                std::make_move_iterator(g.end()));
  return probes;
}

// True when violation(y) <= tol for every probe. `witness` holds the index
// of the last violating probe and is tried first on the next call.
template <class Violation>
bool admissible(const std::vector<Point>& probes, const Violation& violation,
                double tol, std::size_t& witness) {
  if (witness < probes.size() && violation(probes[witness]) > tol) return false;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (violation(probes[i]) > tol) {
      witness = i;
      return false;
    }
  }
  return true;
}

}  // namespace

double ep_residual(const BifunctionFn& f, const Point& x, const BoxSet& k, int grid) {
  require_same_dim(x, k.lower(), "ep_residual");
  if (grid < 2) throw UsageError("ep_residual: grid must be >= 2");
  double worst = 0.0;
  for (const Point& y : k.grid(grid)) worst = std::max(worst, -f(x, y));
  return worst;
}

double dual_ep_residual(const BifunctionFn& f, const Point& x, const BoxSet& k,
                        int grid) {
  require_same_dim(x, k.lower(), "dual_ep_residual");
  if (grid < 2) throw UsageError("dual_ep_residual: grid must be >= 2");
  double worst = 0.0;
  for (const Point& y : k.grid(grid)) worst = std::max(worst, f(y, x));
  return worst;
}

std::vector<Point> solve_ep_grid(const BifunctionFn& f, const BoxSet& k, int grid,
                                 double tol) {
  check_grid_args(k, grid, "solve_ep_grid");
  if (!(tol >= 0.0)) throw UsageError("solve_ep_grid: tol must be >= 0");
  const std::vector<Point> probes = probe_order(k, grid);
  std::vector<Point> out;
  std::size_t witness = probes.size();
  for (const Point& x : k.grid(grid)) {
    auto violation = [&](const Point& y) { return -f(x, y); };
    if (admissible(probes, violation, tol, witness)) out.push_back(x);
  }
  return out;
}

std::vector<Point> solve_bep_grid(const BepInstance& inst, int grid, double tol) {
  const BoxSet& k = inst.k();
  check_grid_args(k, grid, "solve_bep_grid");
  std::vector<Point> stage1 = solve_ep_grid(
      [&inst](const Point& x, const Point& y) { return inst.f(x, y); }, k, grid, tol);
  if (stage1.empty()) {
    throw OracleError("solve_bep_grid: no grid point solves the lower-level problem "
                      "(grid " + std::to_string(grid) + ", tol " + std::to_string(tol) +
                      "); refine the grid or loosen tol");
  }
  std::vector<Point> out;
  std::size_t witness = stage1.size();
  for (const Point& x : stage1) {
    auto violation = [&](const Point& y) { return -inst.g(x, y); };
    if (admissible(stage1, violation, tol, witness)) out.push_back(x);
  }
  return out;
}

double grid_spacing(const BoxSet& k, int grid) {
  if (grid < 2) throw UsageError("grid_spacing: grid must be >= 2");
  return (k.upper() - k.lower()).maxCoeff() / (grid - 1);
}

}  // namespace fbf
