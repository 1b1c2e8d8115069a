#pragma once

#include <span>
#include <vector>

#include "aggrelax/grid.hpp"
#include "aggrelax/potential.hpp"

namespace aggrelax {

/// Literal O(N^2) discrete convolution on cell centers:
///   a_j = -sum_{k != j} W'(x_j - x_k) rho_k dx.
/// The self term is excluded for every potential kind. Summation order within
/// each j is fixed (stride-4 partial sums over increasing k), so results do
/// not depend on anything but the inputs.
std::vector<double> convolve(std::span<const double> rho, const Grid& grid, const Potential& potential);

/// O(N) evaluation of the same sum for the newtonian kind via prefix sums:
///   a_j = (mass right of cell j - mass left of cell j) / 2.
std::vector<double> newtonian_fast(std::span<const double> rho, const Grid& grid);

/// Point-set variants used by the interface fixed point: weights[k] is the
/// mass carried by point k. points_convolve accepts any point order (and
/// throws on coincident points under the pointy kind); the fast variants
/// require strictly increasing positions.
std::vector<double> points_convolve(std::span<const double> positions, std::span<const double> weights,
                                    const Potential& potential);
std::vector<double> points_newtonian_fast(std::span<const double> weights);

/// W'(x) = x makes the self term vanish identically, so the quadratic sum
/// collapses to a_j = S - x_j M with M = sum_k w_k, S = sum_k x_k w_k. Agrees
/// with the literal loop to roundoff (absolute, scale of |x| M + |S|).
std::vector<double> points_quadratic_fast(std::span<const double> positions,
                                          std::span<const double> weights);

/// -sum_k W'(x - positions[k]) weights[k] with no self exclusion; x must not
/// coincide with any source point for the pointy kind.
double convolve_eval_at(double x, std::span<const double> positions, std::span<const double> weights,
                        const Potential& potential);

/// Dispatch helpers used by the schemes: prefix sums for the newtonian kind
/// (when positions are strictly increasing), the collapsed moments for the
/// quadratic kind, the literal loop otherwise. Agree with convolve() to
/// roundoff.
std::vector<double> velocity_field(std::span<const double> rho, const Grid& grid, const Potential& potential);
std::vector<double> points_velocity_field(std::span<const double> positions, std::span<const double> weights,
                                          const Potential& potential);

} // namespace aggrelax
