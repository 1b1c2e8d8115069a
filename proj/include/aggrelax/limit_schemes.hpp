#pragma once

#include <span>
#include <vector>

#include "aggrelax/boundary.hpp"
#include "aggrelax/grid.hpp"
#include "aggrelax/potential.hpp"
#include "aggrelax/wellbalanced.hpp"

namespace aggrelax {

struct LimitParams {
    double c;
    FixedPointConfig fixed_point; // used by gv_step only
};

/// Rusanov (local Lax-Friedrichs) step for the limit equation
/// d_t rho + d_x(a[rho] rho) = 0 with cell-centered frozen velocities:
///   rho_j <- rho_j - (dt/2dx)(a_{j+1} rho_{j+1} - a_{j-1} rho_{j-1})
///                  + (c dt/2dx)(rho_{j+1} - 2 rho_j + rho_{j-1}).
/// This is exactly the splitting scheme once exp(-dt/eps) underflows to zero.
[[nodiscard]] std::vector<double> rusanov_step(std::span<const double> rho, const Grid& grid,
                                 const Potential& potential, double c, double dt,
                                 const BoundaryCondition& bc = BoundaryCondition::zero_inflow());

/// Upwind interface-flux step: the well-balanced scheme with the limit
/// coefficients kappa_L = (a_L)_+, kappa_R = -(a_R)_-, i.e.
///   sigma_{j+1/2} = (nu_j (a_L)_+ + mu_{j+1} (a_R)_-) / (c + (a_R)_- + (a_L)_+),
/// with the same conservative rho/sigma update and the same velocity fixed
/// point as wb_step.
[[nodiscard]] State gv_step(const State& state, const Grid& grid, const Potential& potential,
              const LimitParams& params, double dt,
              const BoundaryCondition& bc = BoundaryCondition::zero_inflow(),
              StepStats* stats = nullptr);

} // namespace aggrelax
