#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aggrelax/errors.hpp"
#include "aggrelax/metrics.hpp"
#include "aggrelax/runner.hpp"

using namespace aggrelax;

TEST_CASE("name round trips") {
    for (const Scheme s : {Scheme::Splitting, Scheme::WellBalanced, Scheme::Rusanov, Scheme::GV}) {
        CHECK(scheme_from_name(scheme_name(s)) == s);
    }
    CHECK_THROWS_AS(scheme_from_name("upwind"), ConfigError);

    CHECK(potential_from_name("newtonian") == Potential::Kind::Newtonian);
    CHECK(potential_from_name("quadratic") == Potential::Kind::Quadratic);
    CHECK_THROWS_AS(potential_from_name("cubic"), ConfigError);

    CHECK(is_relaxation_scheme(Scheme::Splitting));
    CHECK(is_relaxation_scheme(Scheme::WellBalanced));
    CHECK_FALSE(is_relaxation_scheme(Scheme::Rusanov));
    CHECK_FALSE(is_relaxation_scheme(Scheme::GV));

    CHECK(limit_of(Scheme::Splitting) == Scheme::Rusanov);
    CHECK(limit_of(Scheme::WellBalanced) == Scheme::GV);
    CHECK_THROWS_AS(limit_of(Scheme::Rusanov), ConfigError);
    CHECK_THROWS_AS(limit_of(Scheme::GV), ConfigError);
}

TEST_CASE("parse_init") {
    const InitialData atoms = parse_init("0.5@-0.5,0.5@0.5");
    CHECK(atoms.kind == InitialData::Kind::Atoms);
    REQUIRE(atoms.atoms.atoms.size() == 2);
    CHECK(atoms.atoms.atoms[0].mass == 0.5);
    CHECK(atoms.atoms.atoms[0].position == -0.5);
    CHECK(atoms.atoms.atoms[1].position == 0.5);

    const InitialData tanh_init = parse_init("tanh");
    CHECK(tanh_init.kind == InitialData::Kind::TanhEquilibrium);
    CHECK(tanh_init.atoms.atoms.empty());

    CHECK(parse_init("1e-3@0.25").atoms.atoms[0].mass == 1e-3);

    CHECK_THROWS_AS(parse_init(""), ConfigError);
    CHECK_THROWS_AS(parse_init("0.5"), ConfigError);
    CHECK_THROWS_AS(parse_init("abc@0"), ConfigError);
    CHECK_THROWS_AS(parse_init("0.5@xyz"), ConfigError);
    CHECK_THROWS_AS(parse_init("-0.5@0"), ConfigError);
    CHECK_THROWS_AS(parse_init("0.5@0,"), ConfigError);
    CHECK_THROWS_AS(parse_init("inf@0"), ConfigError);
}

TEST_CASE("config validation") {
    RunConfig config;
    config.init = parse_init("1@0");

    RunConfig bad = config;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = config;
    bad.c = -1.0;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = config;
    bad.cfl = 0.0;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = config;
    bad.cfl = 1.5;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = config;
    bad.t_final = -1.0;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = config;
    bad.n_cells = 0;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = config;
    bad.x_min = 1.0;
    bad.x_max = -1.0;
    CHECK_THROWS_AS(run(bad), ConfigError);

    // quadratic on [-1,1] has a_inf = 2, so c = 1 violates c >= a_inf
    bad = config;
    bad.potential = Potential::Kind::Quadratic;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad.c = 2.0;
    bad.t_final = 0.01;
    CHECK_NOTHROW(run(bad));

    // the tanh profile pairs only with the newtonian potential
    bad = config;
    bad.potential = Potential::Kind::Quadratic;
    bad.c = 2.0;
    bad.init = parse_init("tanh");
    CHECK_THROWS_AS(run(bad), ConfigError);

    // atoms outside the domain surface at deposit time
    bad = config;
    bad.init = parse_init("1@5");
    CHECK_THROWS_AS(run(bad), ConfigError);
}

TEST_CASE("t_final = 0 returns the deposited initial state") {
    RunConfig config;
    config.scheme = Scheme::Splitting;
    config.n_cells = 50;
    config.t_final = 0.0;
    config.init = parse_init("0.5@-0.5,0.5@0.5");
    const RunReport report = run(config);
    CHECK(report.steps == 0);
    CHECK(report.mass_drift == 0.0);

    const Grid grid = make_grid(config);
    const Potential pot = make_potential(config);
    const State initial = initial_state(config, grid, pot);
    CHECK(linf_diff(report.final_state.rho, initial.rho) == 0.0);
    CHECK(linf_diff(report.final_state.sigma, initial.sigma) == 0.0);
    // the only error left is the deposit quantization, at most dx/2 per atom
    CHECK(report.w1_error <= 0.5 * grid.dx + 1e-15);
}

TEST_CASE("initial sigma carries the momentum of the atoms") {
    RunConfig config;
    config.n_cells = 100;
    config.init = parse_init("0.5@-0.5,0.5@0.5");
    const Grid grid = make_grid(config);
    const Potential pot = make_potential(config);
    const State state = initial_state(config, grid, pot);
    const int left = grid.cell_of(-0.5);
    const int right = grid.cell_of(0.5);
    // sigma_0 = a rho with a = +-1/4: atom momentum +-0.125 spread over one cell
    CHECK(state.sigma[left] == doctest::Approx(0.125 / grid.dx).epsilon(1e-14));
    CHECK(state.sigma[right] == doctest::Approx(-0.125 / grid.dx).epsilon(1e-14));
    CHECK(state.rho[left] == doctest::Approx(0.5 / grid.dx).epsilon(1e-14));
}

TEST_CASE("runs are deterministic") {
    RunConfig config;
    config.scheme = Scheme::WellBalanced;
    config.n_cells = 64;
    config.epsilon = 1e-4;
    config.t_final = 0.25;
    config.init = parse_init("0.4@-0.3,0.6@0.5");
    const RunReport first = run(config);
    const RunReport second = run(config);
    CHECK(first.steps == second.steps);
    CHECK(first.w1_error == second.w1_error);
    CHECK(first.mass_drift == second.mass_drift);
    CHECK(linf_diff(first.final_state.rho, second.final_state.rho) == 0.0);
    CHECK(linf_diff(first.final_state.sigma, second.final_state.sigma) == 0.0);
}

TEST_CASE("the final step lands exactly on t_final") {
    RunConfig config;
    config.n_cells = 33;
    config.t_final = 0.1; // not a multiple of dt
    config.init = parse_init("1@0.001");
    const RunReport report = run(config);
    const Grid grid = make_grid(config);
    const double dt0 = config.cfl * grid.dx / config.c;
    CHECK(report.steps == static_cast<long long>(std::ceil(config.t_final / dt0)));
}

TEST_CASE("rusanov runs report the equilibrium flux as sigma") {
    RunConfig config;
    config.scheme = Scheme::Rusanov;
    config.n_cells = 40;
    config.t_final = 0.2;
    config.init = parse_init("0.5@-0.5,0.5@0.5");
    const RunReport report = run(config);
    // sigma = a[rho] rho is odd for even data; mass stays put
    CHECK(report.mass_drift <= 1e-13);
    double total_sigma = 0.0;
    for (const double s : report.final_state.sigma) total_sigma += s;
    CHECK(std::abs(total_sigma) <= 1e-12);
}

TEST_CASE("convergence sweep validation") {
    RunConfig base;
    base.init = parse_init("1@0.1");
    base.t_final = 0.05;
    const OracleSpec particle;
    CHECK_THROWS_AS(convergence_sweep(base, {100, 200}, particle), ConfigError);
    CHECK_THROWS_AS(convergence_sweep(base, {100, 100, 200}, particle), ConfigError);
    CHECK_THROWS_AS(convergence_sweep(base, {200, 100, 50}, particle), ConfigError);

    OracleSpec self;
    self.kind = OracleSpec::Kind::SelfFinest;
    self.cells = 200; // must exceed the finest sweep resolution
    CHECK_THROWS_AS(convergence_sweep(base, {50, 100, 200}, self), ConfigError);

    RunConfig tanh_base = base;
    tanh_base.init = parse_init("tanh");
    tanh_base.epsilon = 1e-2;
    CHECK_THROWS_AS(convergence_sweep(tanh_base, {50, 100, 200}, particle), ConfigError);
}

TEST_CASE("a stationary dirac makes the sweep degenerate instead of lying") {
    // on odd grids the atom at 0 sits exactly on a cell center and gv keeps it
    // fixed, so every error is exactly zero and no slope can be fitted
    RunConfig base;
    base.scheme = Scheme::GV;
    base.t_final = 0.3;
    base.init = parse_init("1@0");
    const SweepResult sweep = convergence_sweep(base, {25, 51, 75}, OracleSpec{});
    REQUIRE(sweep.rows.size() == 3);
    for (const SweepRow& row : sweep.rows) CHECK(row.w1_error == 0.0);
    CHECK(sweep.degenerate);
    CHECK(std::isnan(sweep.slope));
}

TEST_CASE("epsilon sweep validation") {
    RunConfig base;
    base.init = parse_init("1@0.1");
    base.t_final = 0.05;
    base.scheme = Scheme::Rusanov;
    CHECK_THROWS_AS(epsilon_sweep(base, {1e-2, 1e-3}), ConfigError);
    base.scheme = Scheme::Splitting;
    CHECK_THROWS_AS(epsilon_sweep(base, {1e-2}), ConfigError);
    CHECK_THROWS_AS(epsilon_sweep(base, {1e-2, -1e-3}), ConfigError);
}

TEST_CASE("summary CSV carries 17 significant digits and the slope line") {
    std::vector<SweepRow> rows;
    rows.push_back({0.02, 1e-7, 1.0 / 3.0, 1e-15, 42, 1.5});
    const double slope = 0.5123456789012345;
    const std::string with_slope = summary_csv_text(rows, &slope);
    CHECK(with_slope.find("dx,epsilon,w1_error,mass_drift,steps,wall_ms\n") == 0);
    CHECK(with_slope.find("0.33333333333333331") != std::string::npos);
    CHECK(with_slope.find(",42,") != std::string::npos);
    CHECK(with_slope.find("# slope=0.5123456789012345\n") != std::string::npos);
    const std::string without = summary_csv_text(rows, nullptr);
    CHECK(without.find("slope") == std::string::npos);

    // byte determinism
    CHECK(summary_csv_text(rows, &slope) == with_slope);
}

TEST_CASE("write_summary_csv round-trips through the filesystem") {
    std::vector<SweepRow> rows;
    rows.push_back({0.01, 2e-6, 0.125, 0.0, 7, 0.25});
    const std::string path = "test_runner_summary.csv";
    write_summary_csv(path, rows, nullptr);
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == summary_csv_text(rows, nullptr));
    std::remove(path.c_str());
}
