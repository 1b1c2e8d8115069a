#include "aggrelax/velocity.hpp"

#include <cmath>

#include "aggrelax/errors.hpp"

namespace aggrelax {

namespace {

// Stride-4 accumulation: four independent partial sums over k = 0,4,8,...,
// k = 1,5,9,... etc., combined as (s0+s1)+(s2+s3). The order is fixed, so the
// result is a pure function of the inputs; the independent chains keep the
// O(N^2) loop from being latency-bound.
template <class Term>
double strided_sum(std::size_t n, std::size_t skip, Term term) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        if (k == skip) continue;
        s[k & 3u] += term(k);
    }
    return (s[0] + s[1]) + (s[2] + s[3]);
}

constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);

} // namespace

std::vector<double> points_convolve(std::span<const double> positions, std::span<const double> weights,
                                    const Potential& potential) {
    if (positions.size() != weights.size()) {
        throw ConfigError("points_convolve: positions/weights length mismatch");
    }
    const std::size_t n = positions.size();
    std::vector<double> a(n, 0.0);
    switch (potential.kind) {
        case Potential::Kind::Newtonian:
            for (std::size_t j = 0; j < n; ++j) {
                const double xj = positions[j];
                a[j] = -strided_sum(n, j, [&](std::size_t k) {
                    const double d = xj - positions[k];
                    if (d == 0.0) {
                        throw NumericsError("points_convolve: coincident points under the pointy kind");
                    }
                    return (d > 0.0 ? 0.5 : -0.5) * weights[k];
                });
            }
            break;
        case Potential::Kind::Quadratic:
            for (std::size_t j = 0; j < n; ++j) {
                const double xj = positions[j];
                a[j] = -strided_sum(n, j, [&](std::size_t k) { return (xj - positions[k]) * weights[k]; });
            }
            break;
    }
    return a;
}

std::vector<double> convolve(std::span<const double> rho, const Grid& grid, const Potential& potential) {
    if (rho.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("convolve: rho length mismatch with grid");
    }
    const std::vector<double> xs = grid.centers();
    std::vector<double> w(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k) w[k] = rho[k] * grid.dx;
    return points_convolve(xs, w, potential);
}

std::vector<double> points_newtonian_fast(std::span<const double> weights) {
    const std::size_t n = weights.size();
    std::vector<double> a(n, 0.0);
    if (n == 0) return a;
    // left[j] = sum of weights strictly left of j; right accumulated on the fly.
    std::vector<double> left(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) left[j] = left[j - 1] + weights[j - 1];
    double right = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        a[j] = 0.5 * (right - left[j]);
        right += weights[j];
    }
    return a;
}

std::vector<double> newtonian_fast(std::span<const double> rho, const Grid& grid) {
    if (rho.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("newtonian_fast: rho length mismatch with grid");
    }
    std::vector<double> w(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k) w[k] = rho[k] * grid.dx;
    return points_newtonian_fast(w);
}

double convolve_eval_at(double x, std::span<const double> positions, std::span<const double> weights,
                        const Potential& potential) {
    if (positions.size() != weights.size()) {
        throw ConfigError("convolve_eval_at: positions/weights length mismatch");
    }
    switch (potential.kind) {
        case Potential::Kind::Newtonian:
            return -strided_sum(positions.size(), kNoSkip, [&](std::size_t k) {
                const double d = x - positions[k];
                if (d == 0.0) {
                    throw NumericsError("convolve_eval_at: evaluation point coincides with a source point");
                }
                return (d > 0.0 ? 0.5 : -0.5) * weights[k];
            });
        case Potential::Kind::Quadratic:
            return -strided_sum(positions.size(), kNoSkip,
                                [&](std::size_t k) { return (x - positions[k]) * weights[k]; });
    }
    throw ConfigError("convolve_eval_at: unknown potential kind");
}

std::vector<double> points_quadratic_fast(std::span<const double> positions,
                                          std::span<const double> weights) {
    if (positions.size() != weights.size()) {
        throw ConfigError("points_quadratic_fast: positions/weights length mismatch");
    }
    const std::size_t n = positions.size();
    const double m0 = strided_sum(n, kNoSkip, [&](std::size_t k) { return weights[k]; });
    const double m1 = strided_sum(n, kNoSkip, [&](std::size_t k) { return positions[k] * weights[k]; });
    std::vector<double> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = m1 - positions[j] * m0;
    return a;
}

namespace {

bool strictly_increasing(std::span<const double> xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i - 1] < xs[i])) return false;
    }
    return true;
}

} // namespace

std::vector<double> points_velocity_field(std::span<const double> positions, std::span<const double> weights,
                                          const Potential& potential) {
    if (positions.size() != weights.size()) {
        throw ConfigError("points_velocity_field: positions/weights length mismatch");
    }
    if (potential.kind == Potential::Kind::Quadratic) {
        return points_quadratic_fast(positions, weights);
    }
    if (potential.kind == Potential::Kind::Newtonian && strictly_increasing(positions)) {
        return points_newtonian_fast(weights);
    }
    return points_convolve(positions, weights, potential);
}

std::vector<double> velocity_field(std::span<const double> rho, const Grid& grid, const Potential& potential) {
    if (potential.kind == Potential::Kind::Newtonian) {
        return newtonian_fast(rho, grid);
    }
    if (potential.kind == Potential::Kind::Quadratic) {
        const std::vector<double> xs = grid.centers();
        std::vector<double> w(rho.size());
        if (rho.size() != static_cast<std::size_t>(grid.n_cells)) {
            throw ConfigError("velocity_field: rho length mismatch with grid");
        }
        for (std::size_t k = 0; k < rho.size(); ++k) w[k] = rho[k] * grid.dx;
        return points_quadratic_fast(xs, w);
    }
    return convolve(rho, grid, potential);
}

} // namespace aggrelax
