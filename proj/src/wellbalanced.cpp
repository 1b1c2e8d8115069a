#include "aggrelax/wellbalanced.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "aggrelax/errors.hpp"
#include "aggrelax/metrics.hpp"
#include "aggrelax/velocity.hpp"

namespace aggrelax {

namespace {

// One side of the kappa pair; theta = dx / (eps c^2) > 0 (may be inf for
// vanishing eps, in which case the exponential saturates and kappa_L -> a_+,
// kappa_R -> -a_-).
double kappa_side(double a, double theta, bool left_side) {
    if (a == 0.0) {
        const double inv = 1.0 / theta;
        return left_side ? inv : -inv;
    }
    const double t = a * theta;
    if (std::abs(t) < 1e-8) {
        // a / (1 - e^{-+a theta}) = +-1/theta + a/2 +- a^2 theta / 12 + O((a theta)^3).
        const double quad = a * a * theta / 12.0;
        return left_side ? (1.0 / theta + 0.5 * a + quad) : (-1.0 / theta + 0.5 * a - quad);
    }
    // expm1 keeps full relative accuracy for small |t|; overflow/underflow of
    // the exponential reproduces the eps -> 0 limits exactly.
    const double denom = left_side ? -std::expm1(-t) : -std::expm1(t);
    return a / denom;
}

} // namespace

KappaPair kappa(double a_left, double a_right, double dx, double epsilon, double c) {
    if (!(dx > 0.0) || !(epsilon > 0.0) || !(c > 0.0)) {
        throw ConfigError("kappa: dx, epsilon and c must be positive");
    }
    const double theta = dx / (epsilon * c * c);
    return {kappa_side(a_left, theta, true), kappa_side(a_right, theta, false)};
}

InterfaceSolution interface_solve(double mu_right, double nu_left, double kappa_left,
                                  double kappa_right, double c) {
    if (!(c > 0.0)) {
        throw ConfigError("interface_solve: c must be positive");
    }
    if (kappa_left < 0.0 || kappa_right > 0.0) {
        throw ConfigError("interface_solve: kappa signs violated (need kappa_L >= 0 >= kappa_R)");
    }
    const double denom = c + kappa_left - kappa_right; // >= c
    InterfaceSolution sol;
    sol.rho_left = ((c - kappa_right) * nu_left + kappa_right * mu_right) / (c * denom);
    sol.rho_right = (kappa_left * nu_left - (c + kappa_left) * mu_right) / (c * denom);
    sol.sigma_half = (kappa_left * nu_left - kappa_right * mu_right) / denom;
    return sol;
}

namespace detail {

namespace {

struct ExtendedDiagonals {
    std::vector<double> mu, nu;    // interior values
    double mu_ghost_right = 0.0;   // mu of ghost cell n
    double nu_ghost_left = 0.0;    // nu of ghost cell -1

    double mu_right_of(int interface, int n) const {
        return interface < n ? mu[static_cast<std::size_t>(interface)] : mu_ghost_right;
    }
    double nu_left_of(int interface) const {
        return interface > 0 ? nu[static_cast<std::size_t>(interface - 1)] : nu_ghost_left;
    }
};

ExtendedDiagonals extend_diagonals(const State& state, const Grid& grid, double c,
                                   const BoundaryCondition& bc) {
    ExtendedDiagonals ext;
    auto mn = to_diagonal(state, c);
    ext.mu = std::move(mn.first);
    ext.nu = std::move(mn.second);
    const auto [rho_r, sigma_r] = bc.ghost(grid, grid.n_cells);
    const auto [rho_l, sigma_l] = bc.ghost(grid, -1);
    ext.mu_ghost_right = sigma_r - c * rho_r;
    ext.nu_ghost_left = sigma_l + c * rho_l;
    return ext;
}

KappaPair interface_kappa(double a_left, double a_right, const Grid& grid, double epsilon,
                          double c, KappaModel model) {
    if (model == KappaModel::Limit) {
        return {std::max(a_left, 0.0), std::min(a_right, 0.0)};
    }
    return kappa(a_left, a_right, grid.dx, epsilon, c);
}

void solve_all_interfaces(const ExtendedDiagonals& ext, const Grid& grid, double epsilon, double c,
                          KappaModel model, std::span<const double> a_left,
                          std::span<const double> a_right, std::vector<InterfaceSolution>& out) {
    const int n = grid.n_cells;
    out.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const KappaPair kp = interface_kappa(a_left[k], a_right[k], grid, epsilon, c, model);
        out[k] = interface_solve(ext.mu_right_of(i, n), ext.nu_left_of(i), kp.left, kp.right, c);
    }
}

// Distance between successive density iterates: W_2 between the measures with
// atoms (x_{j-1/2}, rho_j dx / norm_mass) when both iterates are nonnegative
// with matching positive totals; unnormalized discrete L1 otherwise.
double iterate_distance(const std::vector<double>& prev, const std::vector<double>& cur,
                        const Grid& grid, double norm_mass) {
    if (prev == cur) return 0.0;
    bool w2_applicable = norm_mass > 0.0;
    double total_prev = 0.0, total_cur = 0.0;
    for (std::size_t i = 0; i < prev.size() && w2_applicable; ++i) {
        if (prev[i] < 0.0 || cur[i] < 0.0 || !std::isfinite(prev[i]) || !std::isfinite(cur[i])) {
            w2_applicable = false;
        }
        total_prev += prev[i];
        total_cur += cur[i];
    }
    total_prev *= grid.dx / norm_mass;
    total_cur *= grid.dx / norm_mass;
    if (w2_applicable) {
        w2_applicable = total_prev > 0.0 && total_cur > 0.0 &&
                        std::abs(total_prev - total_cur) <=
                            1e-10 * std::max({total_prev, total_cur, 1.0});
    }
    if (w2_applicable) {
        AtomicMeasure mp, mc;
        mp.atoms.reserve(prev.size());
        mc.atoms.reserve(cur.size());
        for (std::size_t i = 0; i < prev.size(); ++i) {
            const double x = grid.interface_position(static_cast<int>(i));
            if (prev[i] != 0.0) mp.atoms.push_back({x, prev[i] * grid.dx / norm_mass});
            if (cur[i] != 0.0) mc.atoms.push_back({x, cur[i] * grid.dx / norm_mass});
        }
        return wasserstein(mp, mc, 2);
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < prev.size(); ++i) l1 += std::abs(prev[i] - cur[i]);
    return l1 * grid.dx;
}

// W_2 between iterates differing in their last bits is of order sqrt(ulp),
// which no reasonable tol can certify. Treat an L1 movement at roundoff scale
// as converged: the iterates sit on a machine-precision limit cycle.
bool machine_plateau(const std::vector<double>& prev, const std::vector<double>& cur) {
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < prev.size(); ++i) {
        diff += std::abs(prev[i] - cur[i]);
        scale += std::abs(prev[i]) + std::abs(cur[i]);
    }
    return diff <= 32.0 * std::numeric_limits<double>::epsilon() * scale;
}

} // namespace

InterfaceAssembly converge_interfaces(const State& state, const Grid& grid,
                                      const Potential& potential, double epsilon, double c,
                                      const FixedPointConfig& config, const BoundaryCondition& bc,
                                      KappaModel model) {
    if (state.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("fixed point: state length mismatch with grid");
    }
    if (!(config.tol > 0.0) || config.max_iter < 1) {
        throw ConfigError("fixed point: tol must be positive and max_iter at least 1");
    }
    const int n = grid.n_cells;
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    const ExtendedDiagonals ext = extend_diagonals(state, grid, c, bc);

    // Convolution points of the interface families: the cell center to the
    // right of each interface (x_n is the right ghost center).
    std::vector<double> points(m);
    for (std::size_t i = 0; i < m; ++i) points[i] = grid.x_min + (static_cast<double>(i) + 0.5) * grid.dx;

    // Seed velocities from the frozen cell field, evaluated at the ghost
    // centers where the interface touches a ghost cell.
    std::vector<double> cell_weights(state.rho.size());
    for (std::size_t k = 0; k < cell_weights.size(); ++k) cell_weights[k] = state.rho[k] * grid.dx;
    const std::vector<double> a_cells = velocity_field(state.rho, grid, potential);
    const std::vector<double> centers = grid.centers();

    InterfaceAssembly asm_;
    asm_.velocities.left.resize(m);
    asm_.velocities.right.resize(m);
    for (int i = 0; i <= n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        asm_.velocities.left[k] = (i - 1 >= 0)
            ? a_cells[static_cast<std::size_t>(i - 1)]
            : convolve_eval_at(grid.x_min - 0.5 * grid.dx, centers, cell_weights, potential);
        asm_.velocities.right[k] = (i < n)
            ? a_cells[k]
            : convolve_eval_at(grid.x_min + (n + 0.5) * grid.dx, centers, cell_weights, potential);
    }

    solve_all_interfaces(ext, grid, epsilon, c, model, asm_.velocities.left, asm_.velocities.right,
                         asm_.solutions);
    std::vector<double> rho_left(m), rho_right(m), weights(m);
    auto split_densities = [&](const std::vector<InterfaceSolution>& sols, std::vector<double>& l,
                               std::vector<double>& r) {
        for (std::size_t i = 0; i < m; ++i) {
            l[i] = sols[i].rho_left;
            r[i] = sols[i].rho_right;
        }
    };
    split_densities(asm_.solutions, rho_left, rho_right);

    const double norm_mass = total_mass(state.rho, grid);
    std::vector<InterfaceSolution> next_solutions;
    std::vector<double> next_left(m), next_right(m);
    double dist_left = 0.0, dist_right = 0.0;
    for (int iter = 1; iter <= config.max_iter; ++iter) {
        for (std::size_t i = 0; i < m; ++i) weights[i] = rho_left[i] * grid.dx;
        asm_.velocities.left = points_velocity_field(points, weights, potential);
        for (std::size_t i = 0; i < m; ++i) weights[i] = rho_right[i] * grid.dx;
        asm_.velocities.right = points_velocity_field(points, weights, potential);

        solve_all_interfaces(ext, grid, epsilon, c, model, asm_.velocities.left,
                             asm_.velocities.right, next_solutions);
        split_densities(next_solutions, next_left, next_right);
        dist_left = iterate_distance(rho_left, next_left, grid, norm_mass);
        dist_right = iterate_distance(rho_right, next_right, grid, norm_mass);

        const bool left_done = dist_left <= config.tol || machine_plateau(rho_left, next_left);
        const bool right_done = dist_right <= config.tol || machine_plateau(rho_right, next_right);
        asm_.solutions = next_solutions;
        rho_left.swap(next_left);
        rho_right.swap(next_right);
        asm_.velocities.iterations = iter;
        if (left_done && right_done) {
            return asm_;
        }
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "interface fixed point: no convergence after " << config.max_iter
        << " iterations (last distances L " << dist_left << ", R " << dist_right << ", tol "
        << config.tol << ")";
    throw NumericsError(msg.str());
}

State conservative_update(const State& state, const Grid& grid, double c, double dt,
                          std::span<const InterfaceSolution> solutions, const BoundaryCondition& bc) {
    const int n = grid.n_cells;
    if (solutions.size() != static_cast<std::size_t>(n) + 1) {
        throw ConfigError("conservative_update: need n_cells + 1 interface solutions");
    }
    const double lambda = c * dt / grid.dx;
    if (!(lambda >= 0.0) || lambda > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "conservative_update: CFL violation, c*dt/dx = " << lambda;
        throw NumericsError(msg.str());
    }
    std::vector<double> flux(solutions.size());
    for (std::size_t i = 0; i < solutions.size(); ++i) flux[i] = solutions[i].sigma_half;
    if (bc.mode == BoundaryCondition::Mode::ZeroInflow) {
        flux.front() = 0.0;
        flux.back() = 0.0;
    }
    State out = state;
    const double r = dt / grid.dx;
    for (int j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(j);
        out.rho[k] = state.rho[k] - r * (flux[k + 1] - flux[k]);
        out.sigma[k] = state.sigma[k] - c * r * (2.0 * state.sigma[k] - flux[k + 1] - flux[k]);
    }
    return out;
}

} // namespace detail

InterfaceVelocities fixed_point_velocities(const State& state, const Grid& grid,
                                           const Potential& potential, double epsilon, double c,
                                           const FixedPointConfig& config,
                                           const BoundaryCondition& bc, KappaModel model) {
    return detail::converge_interfaces(state, grid, potential, epsilon, c, config, bc, model)
        .velocities;
}

State wb_step(const State& state, const Grid& grid, const Potential& potential,
              const WellBalancedParams& params, double dt, const BoundaryCondition& bc,
              StepStats* stats) {
    detail::InterfaceAssembly asm_ = detail::converge_interfaces(
        state, grid, potential, params.epsilon, params.c, params.fixed_point, bc,
        KappaModel::Relaxation);
    if (stats) stats->fixed_point_iterations = asm_.velocities.iterations;
    return detail::conservative_update(state, grid, params.c, dt, asm_.solutions, bc);
}

} // namespace aggrelax
