#include "aggrelax/grid.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aggrelax/errors.hpp"

namespace aggrelax {

Grid::Grid(double x_min_, double x_max_, int n_cells_)
    : x_min(x_min_), x_max(x_max_), n_cells(n_cells_), dx(0.0) {
    if (!(x_min < x_max)) {
        throw ConfigError("grid: x_min must be strictly below x_max");
    }
    if (n_cells < 1) {
        throw ConfigError("grid: n_cells must be at least 1");
    }
    dx = (x_max - x_min) / n_cells;
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw ConfigError("grid: degenerate cell width");
    }
}

std::vector<double> Grid::centers() const {
    std::vector<double> xs(static_cast<std::size_t>(n_cells));
    for (int j = 0; j < n_cells; ++j) {
        xs[static_cast<std::size_t>(j)] = center(j);
    }
    return xs;
}

int Grid::cell_of(double x) const {
    if (!(x >= x_min) || !(x < x_max)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "grid: position " << x << " outside the half-open domain [" << x_min << ", " << x_max << ")";
        throw ConfigError(msg.str());
    }
    int j = static_cast<int>(std::floor((x - x_min) / dx));
    if (j < 0) j = 0;
    if (j >= n_cells) j = n_cells - 1;
    // Snap to the membership realized by the representable interface positions,
    // so that a position equal to interface_position(i) lands in cell i.
    if (j + 1 < n_cells && x >= interface_position(j + 1)) {
        ++j;
    } else if (j > 0 && x < interface_position(j)) {
        --j;
    }
    return j;
}

State::State(std::vector<double> rho_, std::vector<double> sigma_)
    : rho(std::move(rho_)), sigma(std::move(sigma_)) {
    if (rho.size() != sigma.size()) {
        throw ConfigError("state: rho and sigma must have equal length");
    }
}

double AtomicMeasure::total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms) m += a.mass;
    return m;
}

std::vector<double> deposit(const AtomicMeasure& measure, const Grid& grid) {
    std::vector<double> rho(static_cast<std::size_t>(grid.n_cells), 0.0);
    for (const Atom& a : measure.atoms) {
        rho[static_cast<std::size_t>(grid.cell_of(a.position))] += a.mass / grid.dx;
    }
    return rho;
}

std::pair<std::vector<double>, std::vector<double>> to_diagonal(const State& state, double c) {
    const std::size_t n = state.size();
    std::vector<double> mu(n), nu(n);
    for (std::size_t j = 0; j < n; ++j) {
        mu[j] = state.sigma[j] - c * state.rho[j];
        nu[j] = state.sigma[j] + c * state.rho[j];
    }
    return {std::move(mu), std::move(nu)};
}

State from_diagonal(std::span<const double> mu, std::span<const double> nu, double c) {
    if (mu.size() != nu.size()) {
        throw ConfigError("from_diagonal: mu and nu must have equal length");
    }
    if (!(c > 0.0)) {
        throw ConfigError("from_diagonal: c must be positive");
    }
    State out = State::zeros(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) {
        out.rho[j] = (nu[j] - mu[j]) / (2.0 * c);
        out.sigma[j] = 0.5 * (mu[j] + nu[j]);
    }
    return out;
}

double total_mass(std::span<const double> rho, const Grid& grid) {
    double m = 0.0;
    for (double r : rho) m += r;
    return m * grid.dx;
}

double total_mass(const State& state, const Grid& grid) {
    return total_mass(state.rho, grid);
}

AtomicMeasure measure_from_density(std::span<const double> rho, const Grid& grid) {
    if (rho.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("measure_from_density: length mismatch with grid");
    }
    double max_abs = 0.0;
    for (double r : rho) max_abs = std::max(max_abs, std::abs(r) * grid.dx);
    const double drop = 1e-13 * max_abs;
    AtomicMeasure out;
    for (int j = 0; j < grid.n_cells; ++j) {
        const double m = rho[static_cast<std::size_t>(j)] * grid.dx;
        if (std::abs(m) <= drop) continue;
        out.atoms.push_back({grid.center(j), m});
    }
    return out;
}

void write_state_csv(const std::string& path, const Grid& grid, const State& state) {
    if (state.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("write_state_csv: state length mismatch with grid");
    }
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw ConfigError("write_state_csv: cannot open " + path);
    }
    os << "x,rho,sigma\n";
    char line[128];
    for (int j = 0; j < grid.n_cells; ++j) {
        const std::size_t k = static_cast<std::size_t>(j);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", grid.center(j), state.rho[k], state.sigma[k]);
        os << line;
    }
    if (!os.flush()) {
        throw ConfigError("write_state_csv: write failed for " + path);
    }
}

} // namespace aggrelax
