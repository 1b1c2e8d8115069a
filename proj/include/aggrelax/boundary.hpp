#pragma once

#include <utility>

#include "aggrelax/grid.hpp"

namespace aggrelax {

/// Ghost-cell supplier for out-of-domain cell indices. Two modes:
///  * ZeroInflow: ghost cells carry (rho, sigma) = (0, 0), i.e. nothing enters
///    through either end.
///  * ExactTanh: ghost cells carry the stationary tanh profile (cell-averaged)
///    with sigma = 0, matching the equilibrium boundary data of the
///    relaxation system for the newtonian potential.
struct BoundaryCondition {
    enum class Mode { ZeroInflow, ExactTanh };

    Mode mode = Mode::ZeroInflow;
    double epsilon = 0.0; // ExactTanh profile parameters
    double c = 1.0;

    static BoundaryCondition zero_inflow() { return BoundaryCondition{}; }
    static BoundaryCondition exact_tanh(double epsilon, double c);

    /// (rho, sigma) of ghost cell j, where j < 0 or j >= grid.n_cells.
    std::pair<double, double> ghost(const Grid& grid, int j) const;
};

} // namespace aggrelax
