#include "aggrelax/splitting.hpp"

#include <cmath>
#include <sstream>

#include "aggrelax/errors.hpp"
#include "aggrelax/velocity.hpp"

namespace aggrelax {

State relax_step(const State& state, std::span<const double> velocity, double dt, double epsilon) {
    if (velocity.size() != state.size()) {
        throw ConfigError("relax_step: velocity length mismatch with state");
    }
    if (!(epsilon > 0.0)) {
        throw ConfigError("relax_step: epsilon must be positive");
    }
    if (!(dt >= 0.0)) {
        throw ConfigError("relax_step: dt must be nonnegative");
    }
    const double damping = std::exp(-dt / epsilon); // underflows to exactly 0 for dt >> epsilon
    State out = state;
    for (std::size_t j = 0; j < state.size(); ++j) {
        out.sigma[j] = state.sigma[j] * damping + velocity[j] * state.rho[j] * (1.0 - damping);
    }
    return out;
}

State transport_step(const State& state, const Grid& grid, double c, double dt,
                     const BoundaryCondition& bc) {
    if (state.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("transport_step: state length mismatch with grid");
    }
    if (!(c > 0.0)) {
        throw ConfigError("transport_step: c must be positive");
    }
    const double lambda = c * dt / grid.dx;
    if (!(lambda >= 0.0) || lambda > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "transport_step: CFL violation, c*dt/dx = " << lambda;
        throw NumericsError(msg.str());
    }

    auto [mu, nu] = to_diagonal(state, c);
    const int n = grid.n_cells;

    const auto [rho_gr, sigma_gr] = bc.ghost(grid, n);
    const auto [rho_gl, sigma_gl] = bc.ghost(grid, -1);
    const double mu_ghost_right = sigma_gr - c * rho_gr;
    const double nu_ghost_left = sigma_gl + c * rho_gl;

    std::vector<double> mu_new(mu.size()), nu_new(nu.size());
    for (int j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(j);
        const double mu_right = (j + 1 < n) ? mu[k + 1] : mu_ghost_right;
        const double nu_left = (j > 0) ? nu[k - 1] : nu_ghost_left;
        mu_new[k] = mu[k] + lambda * (mu_right - mu[k]);
        nu_new[k] = nu[k] - lambda * (nu[k] - nu_left);
    }
    return from_diagonal(mu_new, nu_new, c);
}

State splitting_step(const State& state, const Grid& grid, const Potential& potential,
                     const SplittingParams& params, double dt, const BoundaryCondition& bc) {
    const std::vector<double> a = velocity_field(state.rho, grid, potential);
    const State relaxed = relax_step(state, a, dt, params.epsilon);
    return transport_step(relaxed, grid, params.c, dt, bc);
}

} // namespace aggrelax
