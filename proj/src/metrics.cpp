#include "aggrelax/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aggrelax/errors.hpp"

namespace aggrelax {

QuantileFunction QuantileFunction::from_measure(const AtomicMeasure& measure) {
    std::vector<Atom> atoms;
    atoms.reserve(measure.atoms.size());
    for (const Atom& a : measure.atoms) {
        if (a.mass == 0.0) continue;
        if (a.mass < 0.0) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "quantile: negative atom mass " << a.mass << " at position " << a.position;
            throw ConfigError(msg.str());
        }
        if (!std::isfinite(a.position) || !std::isfinite(a.mass)) {
            throw ConfigError("quantile: non-finite atom");
        }
        atoms.push_back(a);
    }
    if (atoms.empty()) {
        throw ConfigError("quantile: measure has no mass");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });

    double total = 0.0;
    for (const Atom& a : atoms) total += a.mass;
    if (!(total > 0.0)) {
        throw ConfigError("quantile: nonpositive total mass");
    }

    QuantileFunction qf;
    qf.points.reserve(atoms.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        double m = atoms[i].mass;
        while (i + 1 < atoms.size() && atoms[i + 1].position == atoms[i].position) {
            m += atoms[i + 1].mass; // coincident atoms act as one
            ++i;
        }
        cum += m / total;
        qf.points.push_back({cum, atoms[i].position});
    }
    return qf;
}

double wasserstein(const AtomicMeasure& mu, const AtomicMeasure& nu, int p) {
    if (p != 1 && p != 2) {
        throw ConfigError("wasserstein: order p must be 1 or 2");
    }
    const double m1 = mu.total_mass();
    const double m2 = nu.total_mass();
    if (std::abs(m1 - m2) > 1e-10 * std::max({std::abs(m1), std::abs(m2), 1.0})) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "wasserstein: total masses differ beyond tolerance: " << m1 << " vs " << m2;
        throw ConfigError(msg.str());
    }
    const QuantileFunction qa = QuantileFunction::from_measure(mu);
    const QuantileFunction qb = QuantileFunction::from_measure(nu);

    // Sweep the merged cumulative-mass breakpoints; on each segment both
    // quantile functions are constant.
    double acc = 0.0;
    double z = 0.0;
    std::size_t i = 0, j = 0;
    while (i < qa.points.size() && j < qb.points.size()) {
        const double ca = qa.points[i].cum;
        const double cb = qb.points[j].cum;
        const double zn = std::min(ca, cb);
        const double d = std::abs(qa.points[i].position - qb.points[j].position);
        if (zn > z) {
            acc += (zn - z) * (p == 1 ? d : d * d);
            z = zn;
        }
        if (ca <= cb) ++i;
        if (cb <= ca) ++j;
    }
    return p == 1 ? acc : std::sqrt(acc);
}

std::vector<double> cdf_transform(std::span<const double> rho, const Grid& grid) {
    if (rho.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("cdf_transform: rho length mismatch with grid");
    }
    std::vector<double> u(rho.size());
    double cum = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
        cum += rho[j] * grid.dx;
        u[j] = 0.5 - cum;
    }
    return u;
}

double l1_diag_norm(const State& state, double c, double dx) {
    double s = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        s += std::abs(state.sigma[j] - c * state.rho[j]) + std::abs(state.sigma[j] + c * state.rho[j]);
    }
    return s * dx;
}

double tv(std::span<const double> values) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        s += std::abs(values[j + 1] - values[j]);
    }
    return s;
}

double linf_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ConfigError("linf_diff: length mismatch");
    }
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        m = std::max(m, std::abs(a[j] - b[j]));
    }
    return m;
}

} // namespace aggrelax
