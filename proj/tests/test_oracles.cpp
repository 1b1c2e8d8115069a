#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "aggrelax/errors.hpp"
#include "aggrelax/grid.hpp"
#include "aggrelax/oracles.hpp"
#include "aggrelax/potential.hpp"

using namespace aggrelax;

namespace {

ParticleSystem two_half_masses() {
    AtomicMeasure m;
    m.atoms.push_back({-0.5, 0.5});
    m.atoms.push_back({0.5, 0.5});
    return ParticleSystem::from_measure(m);
}

} // namespace

TEST_CASE("from_measure sorts, merges coincident atoms and drops zero mass") {
    AtomicMeasure m;
    m.atoms.push_back({0.5, 0.25});
    m.atoms.push_back({-1.0, 0.1});
    m.atoms.push_back({0.5, 0.15});
    m.atoms.push_back({0.0, 0.0});
    const ParticleSystem system = ParticleSystem::from_measure(m);
    REQUIRE(system.particles.size() == 2);
    CHECK(system.particles[0].position == -1.0);
    CHECK(system.particles[0].mass == doctest::Approx(0.1));
    CHECK(system.particles[1].position == 0.5);
    CHECK(system.particles[1].mass == doctest::Approx(0.4));
    REQUIRE(system.merges.size() == 1);
    CHECK(system.merges[0].time == 0.0);
    CHECK(system.merges[0].position == 0.5);
    CHECK(system.total_mass() == doctest::Approx(0.5));

    AtomicMeasure bad;
    bad.atoms.push_back({0.0, -1.0});
    CHECK_THROWS_AS(ParticleSystem::from_measure(bad), ConfigError);
}

TEST_CASE("two opposite half masses collide at t = 2") {
    // closing speed 1/2 over distance 1; positions -1/2 + t/4 and 1/2 - t/4
    const double t_final = 1.2;
    const ParticleSystem before = particle_evolve(two_half_masses(), Potential::newtonian(), t_final);
    REQUIRE(before.particles.size() == 2);
    CHECK(before.particles[0].position == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(before.particles[1].position == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(before.merges.empty());

    const ParticleSystem after = particle_evolve(two_half_masses(), Potential::newtonian(), 2.5);
    REQUIRE(after.particles.size() == 1);
    CHECK(after.particles[0].position == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(after.particles[0].mass == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(after.merges.size() == 1);
    CHECK(after.merges[0].time == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(after.merges[0].position == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(after.merges[0].mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("velocities of the two-particle system") {
    const ParticleSystem system = two_half_masses();
    const std::vector<double> v = particle_velocities(system, Potential::newtonian());
    REQUIRE(v.size() == 2);
    CHECK(v[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("three particles merge simultaneously at the center") {
    AtomicMeasure m;
    m.atoms.push_back({-0.5, 0.25});
    m.atoms.push_back({0.0, 0.5});
    m.atoms.push_back({0.5, 0.25});
    // outer velocities (0.5*1/2 + 0.25*1/2) = 0.375 toward the center, so
    // both gaps close at t = 0.5/0.375 = 4/3
    const ParticleSystem evolved =
        particle_evolve(ParticleSystem::from_measure(m), Potential::newtonian(), 1.5);
    REQUIRE(evolved.particles.size() == 1);
    CHECK(evolved.particles[0].position == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(evolved.particles[0].mass == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(!evolved.merges.empty());
    CHECK(evolved.merges.back().time == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(evolved.merges.back().mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("newtonian dynamics conserves mass and center of mass") {
    std::mt19937_64 rng(46912ull);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> weight(0.01, 1.0);
    std::uniform_real_distribution<double> times(0.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        AtomicMeasure m;
        const int n = 2 + static_cast<int>(rng() % 10);
        for (int i = 0; i < n; ++i) m.atoms.push_back({pos(rng), weight(rng)});
        const ParticleSystem start = ParticleSystem::from_measure(m);
        double mass = 0.0, moment = 0.0;
        for (const auto& particle : start.particles) {
            mass += particle.mass;
            moment += particle.mass * particle.position;
        }
        const ParticleSystem end = particle_evolve(start, Potential::newtonian(), times(rng));
        double mass_end = 0.0, moment_end = 0.0;
        for (const auto& particle : end.particles) {
            mass_end += particle.mass;
            moment_end += particle.mass * particle.position;
        }
        CHECK(mass_end == doctest::Approx(mass).epsilon(1e-13));
        CHECK(moment_end == doctest::Approx(moment).epsilon(1e-11));
        // positions stay sorted strictly
        for (std::size_t i = 1; i < end.particles.size(); ++i) {
            CHECK(end.particles[i - 1].position < end.particles[i].position);
        }
    }
}

TEST_CASE("quadratic dynamics follows the exact exponential contraction") {
    // x_i(t) = xbar + (x_i - xbar) e^{-M t}: linear ODE, no finite-time collision
    std::mt19937_64 rng(271828ull);
    std::uniform_real_distribution<double> pos(-1.0, 1.0);
    std::uniform_real_distribution<double> weight(0.05, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        AtomicMeasure m;
        const int n = 2 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) m.atoms.push_back({pos(rng), weight(rng)});
        const ParticleSystem start = ParticleSystem::from_measure(m);
        double mass = 0.0, moment = 0.0;
        for (const auto& particle : start.particles) {
            mass += particle.mass;
            moment += particle.mass * particle.position;
        }
        const double xbar = moment / mass;
        const double t = 0.7;
        const ParticleSystem end = particle_evolve(start, Potential::quadratic(4.0), t);
        REQUIRE(end.particles.size() == start.particles.size());
        const double factor = std::exp(-mass * t);
        for (std::size_t i = 0; i < end.particles.size(); ++i) {
            const double expected = xbar + (start.particles[i].position - xbar) * factor;
            CHECK(end.particles[i].position == doctest::Approx(expected).epsilon(1e-12));
            CHECK(end.particles[i].mass == start.particles[i].mass);
        }
    }
}

TEST_CASE("particle_evolve rejects negative times") {
    CHECK_THROWS_AS((void)particle_evolve(two_half_masses(), Potential::newtonian(), -0.1), ConfigError);
}

TEST_CASE("stationary profile carries the exact mass of the tanh density") {
    for (const double epsilon : {1e-2, 1e-4}) {
        const Grid grid(-1.0, 1.0, 100);
        const double c = 1.0;
        const std::vector<double> rho = stationary_profile(grid, epsilon, c);
        const double expected = stationary_cdf(1.0, epsilon, c) - stationary_cdf(-1.0, epsilon, c);
        CHECK(total_mass(rho, grid) == doctest::Approx(expected).epsilon(1e-13));
        // even profile on a symmetric grid
        for (int j = 0; j < 50; ++j) {
            CHECK(rho[j] == doctest::Approx(rho[99 - j]).epsilon(1e-12));
        }
        // peak at the center, monotone decay outward
        for (int j = 1; j <= 49; ++j) CHECK(rho[j] >= rho[j - 1]);
    }
    // a width-resolved profile peaks near 1/(8 eps c^2)
    const double epsilon = 1e-2;
    const Grid fine(-1.0, 1.0, 2000);
    const std::vector<double> rho = stationary_profile(fine, epsilon, 1.0);
    const double peak = rho[1000];
    CHECK(peak == doctest::Approx(1.0 / (8.0 * epsilon)).epsilon(1e-3));
    CHECK(stationary_density(0.0, epsilon, 1.0) == doctest::Approx(1.0 / (8.0 * epsilon)).epsilon(1e-15));
}

TEST_CASE("stationary cdf is the primitive of the density") {
    const double epsilon = 5e-3, c = 1.3;
    for (const double x : {-0.02, -0.004, 0.0, 0.003, 0.017}) {
        const double h = 1e-6;
        const double slope = (stationary_cdf(x + h, epsilon, c) - stationary_cdf(x - h, epsilon, c)) / (2.0 * h);
        CHECK(slope == doctest::Approx(stationary_density(x, epsilon, c)).epsilon(1e-4));
    }
    CHECK(stationary_cdf(0.0, epsilon, c) == doctest::Approx(0.5).epsilon(1e-15));
}
