#include "aggrelax/limit_schemes.hpp"

#include <sstream>

#include "aggrelax/errors.hpp"
#include "aggrelax/velocity.hpp"

namespace aggrelax {

std::vector<double> rusanov_step(std::span<const double> rho, const Grid& grid,
                                 const Potential& potential, double c, double dt,
                                 const BoundaryCondition& bc) {
    if (rho.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("rusanov_step: rho length mismatch with grid");
    }
    if (!(c > 0.0)) {
        throw ConfigError("rusanov_step: c must be positive");
    }
    const double lambda = c * dt / grid.dx;
    if (!(lambda >= 0.0) || lambda > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "rusanov_step: CFL violation, c*dt/dx = " << lambda;
        throw NumericsError(msg.str());
    }
    const int n = grid.n_cells;
    const std::vector<double> a = velocity_field(rho, grid, potential);

    // Ghost cells: density from the boundary condition; the ghost velocity is
    // the convolution of the interior density evaluated at the ghost center.
    auto ghost_value = [&](int j) -> std::pair<double, double> { // (rho, a*rho)
        const auto [rho_g, sigma_g] = bc.ghost(grid, j);
        (void)sigma_g;
        if (rho_g == 0.0) return {0.0, 0.0};
        std::vector<double> w(rho.size());
        for (std::size_t k = 0; k < rho.size(); ++k) w[k] = rho[k] * grid.dx;
        const double a_g = convolve_eval_at(grid.center(j), grid.centers(), w, potential);
        return {rho_g, a_g * rho_g};
    };
    const auto [rho_gl, flux_gl] = ghost_value(-1);
    const auto [rho_gr, flux_gr] = ghost_value(n);

    std::vector<double> out(rho.size());
    const double half = 0.5 * dt / grid.dx;
    for (int j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(j);
        const double rho_m = (j > 0) ? rho[k - 1] : rho_gl;
        const double rho_p = (j + 1 < n) ? rho[k + 1] : rho_gr;
        const double flux_m = (j > 0) ? a[k - 1] * rho[k - 1] : flux_gl;
        const double flux_p = (j + 1 < n) ? a[k + 1] * rho[k + 1] : flux_gr;
        out[k] = rho[k] - half * (flux_p - flux_m) + c * half * (rho_p - 2.0 * rho[k] + rho_m);
    }
    return out;
}

State gv_step(const State& state, const Grid& grid, const Potential& potential,
              const LimitParams& params, double dt, const BoundaryCondition& bc,
              StepStats* stats) {
    detail::InterfaceAssembly assembly = detail::converge_interfaces(
        state, grid, potential, /*epsilon=*/1.0, params.c, params.fixed_point, bc,
        KappaModel::Limit);
    if (stats) stats->fixed_point_iterations = assembly.velocities.iterations;
    return detail::conservative_update(state, grid, params.c, dt, assembly.solutions, bc);
}

} // namespace aggrelax
