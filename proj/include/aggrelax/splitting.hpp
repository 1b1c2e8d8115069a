#pragma once

#include <span>

#include "aggrelax/boundary.hpp"
#include "aggrelax/grid.hpp"
#include "aggrelax/potential.hpp"

namespace aggrelax {

struct SplittingParams {
    double c;       // relaxation speed, must satisfy c >= a_inf
    double epsilon; // relaxation time, > 0
};

/// Exact solve of the stiff relaxation half-step over dt:
/// rho is unchanged, sigma <- sigma * E + a * rho * (1 - E) with E = exp(-dt/epsilon).
/// `velocity` is the frozen cell velocity field a[rho^n].
[[nodiscard]] State relax_step(const State& state, std::span<const double> velocity, double dt, double epsilon);

/// Upwind transport of the diagonal variables at speed c:
/// mu_j <- mu_j + (c dt/dx)(mu_{j+1} - mu_j), nu_j <- nu_j - (c dt/dx)(nu_j - nu_{j-1}).
/// Ghost values come from the boundary condition. Requires c dt/dx <= 1.
[[nodiscard]] State transport_step(const State& state, const Grid& grid, double c, double dt,
                     const BoundaryCondition& bc);

/// One step of the splitting scheme: relax with the velocity field frozen at
/// rho^n, then transport.
[[nodiscard]] State splitting_step(const State& state, const Grid& grid, const Potential& potential,
                     const SplittingParams& params, double dt, const BoundaryCondition& bc);

} // namespace aggrelax
