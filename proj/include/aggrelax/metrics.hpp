#pragma once

#include <span>
#include <vector>

#include "aggrelax/grid.hpp"

namespace aggrelax {

/// Generalized inverse CDF of a normalized atomic measure: piecewise-constant
/// position as a function of cumulative mass z in (0, 1]. points[i].cum is the
/// cumulative mass after atom i; cums are strictly increasing, positions
/// nondecreasing, and the last cum equals 1 up to roundoff.
struct QuantileFunction {
    struct Point {
        double cum;
        double position;
    };
    std::vector<Point> points;

    /// Sorts atoms by position, merges coincident positions, drops zero-mass
    /// atoms and normalizes to unit total mass. Throws ConfigError on a
    /// negative atom mass or a nonpositive total.
    static QuantileFunction from_measure(const AtomicMeasure& measure);
};

/// Exact p-Wasserstein distance (p = 1 or 2) between two atomic measures of
/// equal total mass, computed by merging the breakpoints of the two quantile
/// functions: W_p^p = integral over z in (0,1) of |Qmu(z) - Qnu(z)|^p dz.
/// Total masses must agree within 1e-10 (relative); both measures are
/// normalized to probability internally.
double wasserstein(const AtomicMeasure& mu, const AtomicMeasure& nu, int p);

/// u_j = 1/2 - sum_{k <= j} rho_k dx: the primitive linking the density to the
/// Burgers-type variable; for a unit-mass density u ranges from 1/2 to -1/2.
std::vector<double> cdf_transform(std::span<const double> rho, const Grid& grid);

/// sum_j (|mu_j| + |nu_j|) dx with mu = sigma - c rho, nu = sigma + c rho:
/// the discrete L1 norm of the diagonal variables.
double l1_diag_norm(const State& state, double c, double dx);

/// Total variation sum_j |s_{j+1} - s_j| of a cell sequence.
double tv(std::span<const double> values);

/// max_j |a_j - b_j|; lengths must match.
double linf_diff(std::span<const double> a, std::span<const double> b);

} // namespace aggrelax
