#include "aggrelax/boundary.hpp"

#include "aggrelax/errors.hpp"
#include "aggrelax/oracles.hpp"

namespace aggrelax {

BoundaryCondition BoundaryCondition::exact_tanh(double epsilon, double c) {
    if (!(epsilon > 0.0) || !(c > 0.0)) {
        throw ConfigError("boundary: exact_tanh requires positive epsilon and c");
    }
    BoundaryCondition bc;
    bc.mode = Mode::ExactTanh;
    bc.epsilon = epsilon;
    bc.c = c;
    return bc;
}

std::pair<double, double> BoundaryCondition::ghost(const Grid& grid, int j) const {
    if (j >= 0 && j < grid.n_cells) {
        throw ConfigError("boundary: ghost() called with an interior cell index");
    }
    switch (mode) {
        case Mode::ZeroInflow:
            return {0.0, 0.0};
        case Mode::ExactTanh: {
            const double left = grid.x_min + j * grid.dx;
            const double rho = (stationary_cdf(left + grid.dx, epsilon, c) - stationary_cdf(left, epsilon, c)) / grid.dx;
            return {rho, 0.0};
        }
    }
    throw ConfigError("boundary: unknown mode");
}

} // namespace aggrelax
