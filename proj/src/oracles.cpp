#include "aggrelax/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aggrelax/errors.hpp"

namespace aggrelax {

namespace {

// Particles closer than this (relative to the position scale) are treated as
// one cluster; collision points are only exact up to roundoff.
double coincidence_tolerance(const std::vector<ParticleSystem::Particle>& ps) {
    double scale = 1.0;
    for (const auto& p : ps) scale = std::max(scale, std::abs(p.position));
    return 1e-13 * scale;
}

// Merges every group of (nearly) coincident adjacent particles; records one
// event per group. Returns true when something merged.
bool merge_coincident(std::vector<ParticleSystem::Particle>& ps,
                      std::vector<ParticleSystem::MergeEvent>& merges, double time) {
    const double tol = coincidence_tolerance(ps);
    bool merged_any = false;
    std::vector<ParticleSystem::Particle> out;
    out.reserve(ps.size());
    std::size_t i = 0;
    while (i < ps.size()) {
        std::size_t g = i + 1;
        double mass = ps[i].mass;
        double weighted = ps[i].position * ps[i].mass;
        while (g < ps.size() && ps[g].position - ps[g - 1].position <= tol) {
            mass += ps[g].mass;
            weighted += ps[g].position * ps[g].mass;
            ++g;
        }
        if (g > i + 1) {
            const double pos = mass > 0.0 ? weighted / mass : ps[i].position;
            out.push_back({pos, mass});
            merges.push_back({time, pos, mass});
            merged_any = true;
        } else {
            out.push_back(ps[i]);
        }
        i = g;
    }
    ps = std::move(out);
    return merged_any;
}

} // namespace

ParticleSystem ParticleSystem::from_measure(const AtomicMeasure& measure) {
    ParticleSystem sys;
    sys.particles.reserve(measure.atoms.size());
    for (const Atom& a : measure.atoms) {
        if (a.mass == 0.0) continue;
        if (a.mass < 0.0) {
            throw ConfigError("particles: negative atom mass");
        }
        if (!std::isfinite(a.position) || !std::isfinite(a.mass)) {
            throw ConfigError("particles: non-finite atom");
        }
        sys.particles.push_back({a.position, a.mass});
    }
    if (sys.particles.empty()) {
        throw ConfigError("particles: measure has no mass");
    }
    std::sort(sys.particles.begin(), sys.particles.end(),
              [](const Particle& a, const Particle& b) { return a.position < b.position; });
    merge_coincident(sys.particles, sys.merges, 0.0);
    return sys;
}

AtomicMeasure ParticleSystem::to_measure() const {
    AtomicMeasure m;
    m.atoms.reserve(particles.size());
    for (const Particle& p : particles) m.atoms.push_back({p.position, p.mass});
    return m;
}

double ParticleSystem::total_mass() const {
    double m = 0.0;
    for (const Particle& p : particles) m += p.mass;
    return m;
}

std::vector<double> particle_velocities(const ParticleSystem& system, const Potential& potential) {
    const auto& ps = system.particles;
    std::vector<double> v(ps.size(), 0.0);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (j == i) continue;
            s += potential.derivative(ps[i].position - ps[j].position) * ps[j].mass;
        }
        v[i] = -s;
    }
    return v;
}

namespace {

ParticleSystem evolve_newtonian(ParticleSystem sys, const Potential& potential, double t_final) {
    double t = 0.0;
    while (t < t_final && sys.particles.size() > 1) {
        const std::vector<double> v = particle_velocities(sys, potential);
        double dt_collide = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < sys.particles.size(); ++i) {
            const double closing = v[i] - v[i + 1];
            if (closing > 0.0) {
                const double gap = sys.particles[i + 1].position - sys.particles[i].position;
                dt_collide = std::min(dt_collide, gap / closing);
            }
        }
        const double remaining = t_final - t;
        const double dt = std::min(dt_collide, remaining);
        for (std::size_t i = 0; i < sys.particles.size(); ++i) {
            sys.particles[i].position += v[i] * dt;
        }
        t += dt;
        if (dt_collide <= remaining) {
            merge_coincident(sys.particles, sys.merges, t);
        } else {
            break;
        }
    }
    if (sys.particles.size() == 1 && t < t_final) {
        // A single cluster has zero velocity; nothing moves afterwards.
        t = t_final;
    }
    return sys;
}

ParticleSystem evolve_quadratic(ParticleSystem sys, double t_final) {
    const double mass = sys.total_mass();
    double xbar = 0.0;
    for (const auto& p : sys.particles) xbar += p.position * p.mass;
    xbar /= mass;
    const double shrink = std::exp(-mass * t_final);
    for (auto& p : sys.particles) {
        p.position = xbar + (p.position - xbar) * shrink;
    }
    return sys;
}

} // namespace

ParticleSystem particle_evolve(ParticleSystem system, const Potential& potential, double t_final) {
    if (t_final < 0.0) {
        throw ConfigError("particle_evolve: t_final must be nonnegative");
    }
    if (t_final == 0.0 || system.particles.empty()) return system;
    switch (potential.kind) {
        case Potential::Kind::Newtonian: return evolve_newtonian(std::move(system), potential, t_final);
        case Potential::Kind::Quadratic: return evolve_quadratic(std::move(system), t_final);
    }
    throw ConfigError("particle_evolve: unknown potential kind");
}

double stationary_density(double x, double epsilon, double c) {
    const double s = 4.0 * epsilon * c * c;
    const double th = std::tanh(x / s);
    return (1.0 - th * th) / (8.0 * epsilon * c * c);
}

double stationary_cdf(double x, double epsilon, double c) {
    const double s = 4.0 * epsilon * c * c;
    return 0.5 * (1.0 + std::tanh(x / s));
}

std::vector<double> stationary_profile(const Grid& grid, double epsilon, double c) {
    if (!(epsilon > 0.0) || !(c > 0.0)) {
        throw ConfigError("stationary_profile: epsilon and c must be positive");
    }
    std::vector<double> rho(static_cast<std::size_t>(grid.n_cells));
    double left = stationary_cdf(grid.interface_position(0), epsilon, c);
    for (int j = 0; j < grid.n_cells; ++j) {
        const double right = stationary_cdf(grid.interface_position(j + 1), epsilon, c);
        rho[static_cast<std::size_t>(j)] = (right - left) / grid.dx;
        left = right;
    }
    return rho;
}

std::vector<double> brute_force_convolution(std::span<const double> rho, const Grid& grid,
                                            const Potential& potential) {
    if (rho.size() != static_cast<std::size_t>(grid.n_cells)) {
        throw ConfigError("brute_force_convolution: rho length mismatch with grid");
    }
    const std::size_t n = rho.size();
    std::vector<double> a(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = grid.center(static_cast<int>(j));
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            s += potential.derivative(xj - grid.center(static_cast<int>(k))) * rho[k] * grid.dx;
        }
        a[j] = -s;
    }
    return a;
}

} // namespace aggrelax
