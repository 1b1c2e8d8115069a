#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aggrelax {

/// Uniform 1D mesh on [x_min, x_max] with n_cells cells of width dx.
/// Cell j covers the half-open interval [x_min + j*dx, x_min + (j+1)*dx)
/// and has center x_j = x_min + (j + 1/2) * dx.
struct Grid {
    double x_min;
    double x_max;
    int n_cells;
    double dx;

    Grid(double x_min, double x_max, int n_cells);

    double center(int j) const { return x_min + (j + 0.5) * dx; }

    /// Position of interface i - 1/2, i = 0..n_cells (i=0 is x_min, i=n_cells is x_max).
    double interface_position(int i) const { return x_min + i * dx; }

    std::vector<double> centers() const;

    /// Index of the half-open cell containing x. An atom sitting exactly on an
    /// interior interface belongs to the cell on its right. Throws ConfigError
    /// when x lies outside [x_min, x_max).
    int cell_of(double x) const;
};

/// Cell-centered unknowns (rho_j, sigma_j) of the relaxation system.
struct State {
    std::vector<double> rho;
    std::vector<double> sigma;

    State() = default;
    State(std::vector<double> rho_, std::vector<double> sigma_);
    static State zeros(std::size_t n) { return State(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)); }

    std::size_t size() const { return rho.size(); }
};

struct Atom {
    double position;
    double mass;
};

/// Finite weighted sum of point masses. Masses may carry either sign: the same
/// container is used for rho-like (nonnegative) and sigma-like (signed) data.
struct AtomicMeasure {
    std::vector<Atom> atoms;

    double total_mass() const;
};

/// Piecewise-constant density from a point-mass measure: each atom adds
/// mass/dx to the cell containing it. Throws when an atom falls outside the
/// domain; mass is conserved exactly otherwise.
std::vector<double> deposit(const AtomicMeasure& measure, const Grid& grid);

/// Diagonal (characteristic) variables mu = sigma - c*rho, nu = sigma + c*rho.
std::pair<std::vector<double>, std::vector<double>> to_diagonal(const State& state, double c);

/// Inverse map rho = (nu - mu) / (2c), sigma = (mu + nu) / 2.
State from_diagonal(std::span<const double> mu, std::span<const double> nu, double c);

double total_mass(std::span<const double> rho, const Grid& grid);
double total_mass(const State& state, const Grid& grid);

/// View a cell density as the point-mass measure sum_j (rho_j*dx) delta_{x_j}.
/// Cells whose |mass| is at or below 1e-13 of the largest |mass| are dropped
/// (this also removes roundoff-level negative cells near a support edge).
AtomicMeasure measure_from_density(std::span<const double> rho, const Grid& grid);

/// Snapshot CSV with header "x,rho,sigma", one row per cell, 17 significant
/// digits (round-trip exact for doubles). Output is byte-deterministic.
void write_state_csv(const std::string& path, const Grid& grid, const State& state);

} // namespace aggrelax
