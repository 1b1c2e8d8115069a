#include "aggrelax/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <utility>

#include "aggrelax/errors.hpp"
#include "aggrelax/limit_schemes.hpp"
#include "aggrelax/metrics.hpp"
#include "aggrelax/oracles.hpp"
#include "aggrelax/splitting.hpp"
#include "aggrelax/velocity.hpp"

namespace aggrelax {

namespace {

double parse_finite_double(const std::string& text, const char* what) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError(std::string("cannot parse ") + what + " from '" + text + "'");
    }
    if (pos != text.size() || !std::isfinite(value)) {
        throw ConfigError(std::string("cannot parse ") + what + " from '" + text + "'");
    }
    return value;
}

// Boundary outflow can drain mass from a run (reported via mass_drift); error
// metrics compare shapes, so both sides are normalized to unit mass first.
AtomicMeasure normalized(AtomicMeasure measure) {
    const double total = measure.total_mass();
    if (total > 0.0) {
        for (Atom& atom : measure.atoms) atom.mass /= total;
    }
    return measure;
}

double w1_shape_error(const AtomicMeasure& a, const AtomicMeasure& b) {
    return wasserstein(normalized(a), normalized(b), 1);
}

} // namespace

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::Splitting: return "splitting";
    case Scheme::WellBalanced: return "wellbalanced";
    case Scheme::Rusanov: return "rusanov";
    case Scheme::GV: return "gv";
    }
    throw ConfigError("unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "splitting") return Scheme::Splitting;
    if (name == "wellbalanced") return Scheme::WellBalanced;
    if (name == "rusanov") return Scheme::Rusanov;
    if (name == "gv") return Scheme::GV;
    throw ConfigError("unknown scheme '" + name +
                      "' (expected splitting, wellbalanced, rusanov or gv)");
}

bool is_relaxation_scheme(Scheme scheme) {
    return scheme == Scheme::Splitting || scheme == Scheme::WellBalanced;
}

Scheme limit_of(Scheme scheme) {
    switch (scheme) {
    case Scheme::Splitting: return Scheme::Rusanov;
    case Scheme::WellBalanced: return Scheme::GV;
    default:
        throw ConfigError("scheme '" + scheme_name(scheme) + "' has no relaxation limit");
    }
}

Potential::Kind potential_from_name(const std::string& name) {
    if (name == "newtonian") return Potential::Kind::Newtonian;
    if (name == "quadratic") return Potential::Kind::Quadratic;
    throw ConfigError("unknown potential '" + name + "' (expected newtonian or quadratic)");
}

InitialData parse_init(const std::string& text) {
    InitialData init;
    if (text == "tanh") {
        init.kind = InitialData::Kind::TanhEquilibrium;
        return init;
    }
    init.kind = InitialData::Kind::Atoms;
    if (text.empty()) throw ConfigError("empty initial data");
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t at = item.find('@');
        if (at == std::string::npos) {
            throw ConfigError("initial datum '" + item + "' is not of the form mass@position");
        }
        Atom atom;
        atom.mass = parse_finite_double(item.substr(0, at), "atom mass");
        atom.position = parse_finite_double(item.substr(at + 1), "atom position");
        if (atom.mass < 0.0) {
            throw ConfigError("atom mass must be nonnegative, got " + item.substr(0, at));
        }
        init.atoms.atoms.push_back(atom);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return init;
}

Grid make_grid(const RunConfig& config) {
    return Grid(config.x_min, config.x_max, config.n_cells);
}

Potential make_potential(const RunConfig& config) {
    if (config.potential == Potential::Kind::Newtonian) return Potential::newtonian();
    return Potential::quadratic(config.x_max - config.x_min);
}

namespace {

void validate_config(const RunConfig& config, const Potential& potential) {
    if (!(config.epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive, got " + std::to_string(config.epsilon));
    }
    if (!(config.c > 0.0)) {
        throw ConfigError("wave speed c must be positive, got " + std::to_string(config.c));
    }
    if (!(config.cfl > 0.0) || config.cfl > 1.0) {
        throw ConfigError("cfl must lie in (0, 1], got " + std::to_string(config.cfl));
    }
    if (!(config.t_final >= 0.0) || !std::isfinite(config.t_final)) {
        throw ConfigError("t_final must be a finite nonnegative time");
    }
    if (config.c < potential.a_inf) {
        throw ConfigError("subcharacteristic condition violated: c = " +
                          std::to_string(config.c) + " < a_inf = " +
                          std::to_string(potential.a_inf));
    }
    const bool wants_tanh = config.init.kind == InitialData::Kind::TanhEquilibrium ||
                            config.boundary == BoundaryCondition::Mode::ExactTanh;
    if (wants_tanh && config.potential != Potential::Kind::Newtonian) {
        throw ConfigError("the tanh equilibrium exists only for the newtonian potential");
    }
}

BoundaryCondition make_boundary(const RunConfig& config) {
    if (config.boundary == BoundaryCondition::Mode::ExactTanh) {
        return BoundaryCondition::exact_tanh(config.epsilon, config.c);
    }
    return BoundaryCondition::zero_inflow();
}

} // namespace

State initial_state(const RunConfig& config, const Grid& grid, const Potential& potential) {
    State state = State::zeros(grid.n_cells);
    if (config.init.kind == InitialData::Kind::TanhEquilibrium) {
        state.rho = stationary_profile(grid, config.epsilon, config.c);
        return state;
    }
    state.rho = deposit(config.init.atoms, grid);
    // sigma_0 = a[rho_0] rho_0, deposited as atoms carrying momentum m_i v_i so
    // that two atoms sharing a cell accumulate their momenta.
    const ParticleSystem system = ParticleSystem::from_measure(config.init.atoms);
    const std::vector<double> velocities = particle_velocities(system, potential);
    AtomicMeasure momentum;
    momentum.atoms.reserve(system.particles.size());
    for (std::size_t i = 0; i < system.particles.size(); ++i) {
        momentum.atoms.push_back(
            {system.particles[i].position, system.particles[i].mass * velocities[i]});
    }
    state.sigma = deposit(momentum, grid);
    return state;
}

AtomicMeasure oracle_measure(const RunConfig& config, const Grid& grid,
                             const Potential& potential) {
    if (config.init.kind == InitialData::Kind::TanhEquilibrium) {
        const std::vector<double> profile = stationary_profile(grid, config.epsilon, config.c);
        return measure_from_density(profile, grid);
    }
    const ParticleSystem system =
        particle_evolve(ParticleSystem::from_measure(config.init.atoms), potential,
                        config.t_final);
    return system.to_measure();
}

RunReport run(const RunConfig& config) {
    const Grid grid = make_grid(config);
    const Potential potential = make_potential(config);
    validate_config(config, potential);
    const BoundaryCondition bc = make_boundary(config);

    RunReport report;
    report.grid = grid;
    report.final_state = initial_state(config, grid, potential);
    const double mass0 = total_mass(report.final_state.rho, grid);
    const double mass_scale = std::max(std::abs(mass0), 1e-300);
    const double dt0 = config.cfl * grid.dx / config.c;

    const SplittingParams split_params{config.c, config.epsilon};
    const WellBalancedParams wb_params{config.c, config.epsilon, config.fixed_point};
    const LimitParams limit_params{config.c, config.fixed_point};

    const auto started = std::chrono::steady_clock::now();
    double t = 0.0;
    while (t < config.t_final) {
        const double remaining = config.t_final - t;
        const bool last = dt0 >= remaining;
        const double dt = last ? remaining : dt0;
        StepStats stats;
        switch (config.scheme) {
        case Scheme::Splitting:
            report.final_state =
                splitting_step(report.final_state, grid, potential, split_params, dt, bc);
            break;
        case Scheme::WellBalanced:
            report.final_state =
                wb_step(report.final_state, grid, potential, wb_params, dt, bc, &stats);
            break;
        case Scheme::Rusanov:
            report.final_state.rho =
                rusanov_step(report.final_state.rho, grid, potential, config.c, dt, bc);
            break;
        case Scheme::GV:
            report.final_state =
                gv_step(report.final_state, grid, potential, limit_params, dt, bc, &stats);
            break;
        }
        ++report.steps;
        report.fixed_point.total_iterations += stats.fixed_point_iterations;
        report.fixed_point.max_iterations =
            std::max(report.fixed_point.max_iterations, stats.fixed_point_iterations);
        const double drift =
            std::abs(total_mass(report.final_state.rho, grid) - mass0) / mass_scale;
        report.mass_drift = std::max(report.mass_drift, drift);
        if (last) break;
        t += dt0;
    }
    const auto stopped = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(stopped - started).count();

    if (config.scheme == Scheme::Rusanov) {
        // The limit scheme tracks only rho; report the equilibrium flux.
        const std::vector<double> a = velocity_field(report.final_state.rho, grid, potential);
        for (int j = 0; j < grid.n_cells; ++j) {
            report.final_state.sigma[j] = a[j] * report.final_state.rho[j];
        }
    }

    const AtomicMeasure oracle = oracle_measure(config, grid, potential);
    report.w1_error = w1_shape_error(measure_from_density(report.final_state.rho, grid), oracle);
    return report;
}

namespace {

/// Least-squares slope of log(y) against log(x); nullopt when a nonpositive
/// error makes the fit meaningless.
bool fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys, double& slope) {
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] > 0.0)) return false;
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(ly.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    if (!(den > 0.0)) {
        throw ConfigError("log-log fit needs at least two distinct abscissae");
    }
    slope = num / den;
    return true;
}

} // namespace

SweepResult convergence_sweep(const RunConfig& base, const std::vector<int>& cells,
                              const OracleSpec& oracle) {
    if (cells.size() < 3) {
        throw ConfigError("convergence sweep needs at least three cell counts, got " +
                          std::to_string(cells.size()));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] < 1 || (i > 0 && cells[i] <= cells[i - 1])) {
            throw ConfigError("cell counts must be positive and strictly increasing");
        }
    }

    AtomicMeasure reference;
    if (oracle.kind == OracleSpec::Kind::Particle) {
        if (base.init.kind != InitialData::Kind::Atoms) {
            throw ConfigError("particle oracle requires atomic initial data");
        }
        reference = particle_evolve(ParticleSystem::from_measure(base.init.atoms),
                                    make_potential(base), base.t_final)
                        .to_measure();
    } else {
        if (oracle.cells <= cells.back()) {
            throw ConfigError("self-reference resolution " + std::to_string(oracle.cells) +
                              " must exceed the finest sweep resolution " +
                              std::to_string(cells.back()));
        }
        RunConfig fine = base;
        fine.n_cells = oracle.cells;
        const RunReport report = run(fine);
        reference = measure_from_density(report.final_state.rho, report.grid);
    }

    SweepResult result;
    std::vector<double> dxs, errors;
    for (const int n : cells) {
        RunConfig config = base;
        config.n_cells = n;
        const RunReport report = run(config);
        const double error =
            w1_shape_error(measure_from_density(report.final_state.rho, report.grid), reference);
        result.rows.push_back({report.grid.dx, config.epsilon, error, report.mass_drift,
                               report.steps, report.wall_ms});
        dxs.push_back(report.grid.dx);
        errors.push_back(error);
    }
    result.degenerate = !fit_loglog(dxs, errors, result.slope);
    if (result.degenerate) result.slope = std::numeric_limits<double>::quiet_NaN();
    return result;
}

SweepResult epsilon_sweep(const RunConfig& base, const std::vector<double>& epsilons) {
    if (!is_relaxation_scheme(base.scheme)) {
        throw ConfigError("epsilon sweep requires a relaxation scheme, got '" +
                          scheme_name(base.scheme) + "'");
    }
    if (epsilons.size() < 2) {
        throw ConfigError("epsilon sweep needs at least two epsilon values, got " +
                          std::to_string(epsilons.size()));
    }
    for (const double eps : epsilons) {
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw ConfigError("epsilon sweep values must be positive and finite");
        }
    }

    RunConfig limit_config = base;
    limit_config.scheme = limit_of(base.scheme);
    const RunReport limit_report = run(limit_config);
    const AtomicMeasure limit_measure =
        measure_from_density(limit_report.final_state.rho, limit_report.grid);

    SweepResult result;
    std::vector<double> eps_list, errors;
    for (const double eps : epsilons) {
        RunConfig config = base;
        config.epsilon = eps;
        const RunReport report = run(config);
        const double error = w1_shape_error(
            measure_from_density(report.final_state.rho, report.grid), limit_measure);
        result.rows.push_back(
            {report.grid.dx, eps, error, report.mass_drift, report.steps, report.wall_ms});
        eps_list.push_back(eps);
        errors.push_back(error);
    }
    result.degenerate = !fit_loglog(eps_list, errors, result.slope);
    if (result.degenerate) result.slope = std::numeric_limits<double>::quiet_NaN();
    return result;
}

std::string summary_csv_text(const std::vector<SweepRow>& rows, const double* slope) {
    std::string text = "dx,epsilon,w1_error,mass_drift,steps,wall_ms\n";
    char line[256];
    for (const SweepRow& row : rows) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%lld,%.17g\n", row.dx,
                      row.epsilon, row.w1_error, row.mass_drift, row.steps, row.wall_ms);
        text += line;
    }
    if (slope != nullptr) {
        std::snprintf(line, sizeof(line), "# slope=%.17g\n", *slope);
        text += line;
    }
    return text;
}

void write_summary_csv(const std::string& path, const std::vector<SweepRow>& rows,
                       const double* slope) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(target.parent_path(), ec);
    }
    std::ofstream out(target, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << summary_csv_text(rows, slope);
    out.flush();
    if (!out) throw ConfigError("failed writing '" + path + "'");
}

} // namespace aggrelax
