#pragma once

#include <span>
#include <vector>

#include "aggrelax/grid.hpp"
#include "aggrelax/potential.hpp"

namespace aggrelax {

/// Finite particle system x_i' = -sum_{j != i} m_j W'(x_i - x_j), the exact
/// solution of the aggregation dynamics for atomic initial data. Particles are
/// kept sorted with strictly increasing positions; colliding particles merge
/// (masses add, position is continuous through the collision).
struct ParticleSystem {
    struct Particle {
        double position;
        double mass;
    };
    struct MergeEvent {
        double time;
        double position;
        double mass; // total mass of the merged cluster
    };

    std::vector<Particle> particles;
    std::vector<MergeEvent> merges;

    /// Sorts by position; coincident atoms merge immediately (recorded at time 0).
    /// Atom masses must be nonnegative; zero-mass atoms are dropped.
    static ParticleSystem from_measure(const AtomicMeasure& measure);

    AtomicMeasure to_measure() const;
    double total_mass() const;
};

/// Velocities -sum_{j != i} m_j W'(x_i - x_j) by the literal double loop.
std::vector<double> particle_velocities(const ParticleSystem& system, const Potential& potential);

/// Evolves the system to t_final.
///  * newtonian kind: velocities are piecewise constant between collisions, so
///    the flow is advanced event by event (next adjacent collision time);
///    simultaneous collisions at one location merge all participants at once.
///  * quadratic kind: the ODE is linear, x_i(t) = xbar + (x_i - xbar) e^{-M t}
///    with M the total mass and xbar the (conserved) center of mass; distinct
///    particles never collide in finite time.
[[nodiscard]] ParticleSystem particle_evolve(ParticleSystem system, const Potential& potential, double t_final);

/// Pointwise stationary density of the relaxation system under the newtonian
/// potential: rho(x) = (1 / (8 eps c^2)) (1 - tanh^2(x / (4 eps c^2))).
double stationary_density(double x, double epsilon, double c);

/// Its primitive F(x) = (1 + tanh(x / (4 eps c^2))) / 2 (CDF of the unit-mass profile).
double stationary_cdf(double x, double epsilon, double c);

/// Cell representation of the stationary profile: exact cell averages
/// rho_j = (F(x_{j+1/2}) - F(x_{j-1/2})) / dx, so the discrete mass equals the
/// mass of the profile over the domain at any resolution (the pointwise
/// formula sampled at midpoints loses nearly all mass once dx exceeds the
/// profile width 4 eps c^2).
std::vector<double> stationary_profile(const Grid& grid, double epsilon, double c);

/// Reference O(N^2) convolution a_j = -sum_{k != j} W'(x_j - x_k) rho_k dx,
/// single accumulator, strict left-to-right order. Kept independent of the
/// velocity module on purpose: the two implementations cross-check each other.
std::vector<double> brute_force_convolution(std::span<const double> rho, const Grid& grid,
                                            const Potential& potential);

} // namespace aggrelax
