#pragma once

#include <span>
#include <vector>

#include "aggrelax/boundary.hpp"
#include "aggrelax/grid.hpp"
#include "aggrelax/potential.hpp"

namespace aggrelax {

struct FixedPointConfig {
    double tol = 1e-10; // stopping threshold on the distance between density iterates
    int max_iter = 50;
};

/// Interface coefficient model: Relaxation uses the exponential coefficients
/// of the stationary two-point problem at finite epsilon; Limit uses their
/// eps -> 0 limits kappa_L = max(a_L, 0), kappa_R = min(a_R, 0).
enum class KappaModel { Relaxation, Limit };

struct KappaPair {
    double left;  // >= 0
    double right; // <= 0
};

/// kappa_L = a_L / (1 - exp(-a_L dx/(eps c^2))), kappa_R = a_R / (1 - exp(+a_R dx/(eps c^2))).
/// The singularity at a = 0 is removable (value eps c^2 / dx); for
/// |a| dx/(eps c^2) < 1e-8 the three-term expansion is used instead of the
/// direct quotient.
KappaPair kappa(double a_left, double a_right, double dx, double epsilon, double c);

struct InterfaceSolution {
    double rho_left;   // reconstructed density on the left side of the interface
    double rho_right;  // ... and on the right side
    double sigma_half; // interface flux, equals rho_left*kappa_L + rho_right*kappa_R
};

/// Solves the stationary two-point problem at one interface from the right
/// cell's mu and the left cell's nu:
///   rho_L = ((c - kR) nu + kR mu) / (c (c + kL - kR)),
///   rho_R = (kL nu - (c + kL) mu) / (c (c + kL - kR)),
///   sigma_half = (kL nu - kR mu) / (c + kL - kR) = rho_L kL + rho_R kR.
InterfaceSolution interface_solve(double mu_right, double nu_left, double kappa_left,
                                  double kappa_right, double c);

/// Converged per-interface velocity pairs (a_{j-1/2,L}, a_{j-1/2,R}),
/// j = 0..n_cells (index j couples cells j-1 and j; 0 and n_cells touch ghosts).
struct InterfaceVelocities {
    std::vector<double> left;
    std::vector<double> right;
    int iterations = 0;
};

/// Self-consistent interface velocities: starting from the cell velocity
/// field, alternates interface solves with velocity recomputation
///   a_{j-1/2,F} <- -sum_{k != j} W'(x_j - x_k) rho_{k-1/2,F} dx   (F = L, R)
/// until the distance between successive density iterates drops below
/// config.tol for both families (W_2 between the iterates viewed as atoms at
/// the interfaces, normalized by the total mass of state.rho; discrete L1 when
/// an iterate is not a finite nonnegative measure). Throws NumericsError with
/// the last distances when max_iter is exceeded.
InterfaceVelocities fixed_point_velocities(const State& state, const Grid& grid,
                                           const Potential& potential, double epsilon, double c,
                                           const FixedPointConfig& config,
                                           const BoundaryCondition& bc = BoundaryCondition::zero_inflow(),
                                           KappaModel model = KappaModel::Relaxation);

struct WellBalancedParams {
    double c;
    double epsilon;
    FixedPointConfig fixed_point;
};

struct StepStats {
    int fixed_point_iterations = 0;
};

/// One step of the well-balanced scheme: converge the interface fixed point,
/// then update conservatively
///   rho_j   <- rho_j   - (dt/dx)   (sigma_{j+1/2} - sigma_{j-1/2})
///   sigma_j <- sigma_j - c (dt/dx) (2 sigma_j - sigma_{j+1/2} - sigma_{j-1/2}).
/// Under zero-inflow boundaries the two domain-boundary fluxes are zero.
[[nodiscard]] State wb_step(const State& state, const Grid& grid, const Potential& potential,
              const WellBalancedParams& params, double dt,
              const BoundaryCondition& bc = BoundaryCondition::zero_inflow(),
              StepStats* stats = nullptr);

namespace detail {

/// Fixed point plus the interface solutions it converged to; shared by the
/// well-balanced scheme (Relaxation model) and its limit scheme (Limit model).
struct InterfaceAssembly {
    InterfaceVelocities velocities;
    std::vector<InterfaceSolution> solutions; // size n_cells + 1
};

InterfaceAssembly converge_interfaces(const State& state, const Grid& grid,
                                      const Potential& potential, double epsilon, double c,
                                      const FixedPointConfig& config, const BoundaryCondition& bc,
                                      KappaModel model);

State conservative_update(const State& state, const Grid& grid, double c, double dt,
                          std::span<const InterfaceSolution> solutions, const BoundaryCondition& bc);

} // namespace detail

} // namespace aggrelax
