#pragma once

#include <string>
#include <vector>

#include "aggrelax/boundary.hpp"
#include "aggrelax/grid.hpp"
#include "aggrelax/potential.hpp"
#include "aggrelax/wellbalanced.hpp"

namespace aggrelax {

enum class Scheme { Splitting, WellBalanced, Rusanov, GV };

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);
bool is_relaxation_scheme(Scheme scheme);
/// Rusanov for Splitting, GV for WellBalanced; rejects limit schemes.
Scheme limit_of(Scheme scheme);

Potential::Kind potential_from_name(const std::string& name);

/// Initial data: either a list of point masses (deposited on the grid, with
/// sigma_0 = a[rho_0] rho_0 deposited alongside) or the stationary tanh
/// profile (cell averages, sigma_0 = 0).
struct InitialData {
    enum class Kind { Atoms, TanhEquilibrium };
    Kind kind = Kind::Atoms;
    AtomicMeasure atoms;
};

/// Parses "m1@x1,m2@x2,..." or the literal "tanh".
InitialData parse_init(const std::string& text);

struct RunConfig {
    Scheme scheme = Scheme::Splitting;
    Potential::Kind potential = Potential::Kind::Newtonian;
    double epsilon = 1e-7;
    double c = 1.0;
    double cfl = 0.9;
    int n_cells = 100;
    double x_min = -1.0;
    double x_max = 1.0;
    double t_final = 1.0;
    InitialData init;
    BoundaryCondition::Mode boundary = BoundaryCondition::Mode::ZeroInflow;
    FixedPointConfig fixed_point;
};

struct FixedPointUsage {
    long long total_iterations = 0;
    int max_iterations = 0;
};

struct RunReport {
    Grid grid{0.0, 1.0, 1};
    State final_state;
    long long steps = 0;
    /// max over steps of |mass_n - mass_0| / max(|mass_0|, 1e-300).
    double mass_drift = 0.0;
    /// W1 distance to the run's oracle: the exact particle solution for atomic
    /// initial data, the stationary profile for tanh initial data. Both sides
    /// are normalized to unit mass (boundary outflow shows up in mass_drift,
    /// not here).
    double w1_error = 0.0;
    double wall_ms = 0.0;
    FixedPointUsage fixed_point;
};

/// Time loop with dt = cfl dx / c and a clipped final step landing exactly on
/// t_final. Validates the config (including c >= a_inf) before running.
RunReport run(const RunConfig& config);

// Pieces of run(), exposed for the sweeps and the tests.
Grid make_grid(const RunConfig& config);
Potential make_potential(const RunConfig& config);
State initial_state(const RunConfig& config, const Grid& grid, const Potential& potential);
AtomicMeasure oracle_measure(const RunConfig& config, const Grid& grid, const Potential& potential);

struct SweepRow {
    double dx = 0.0;
    double epsilon = 0.0;
    double w1_error = 0.0;
    double mass_drift = 0.0;
    long long steps = 0;
    double wall_ms = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double slope = 0.0;     // least-squares slope of log(error) against log(dx) or log(eps)
    bool degenerate = false; // a zero error makes the log-log fit meaningless
};

struct OracleSpec {
    enum class Kind { Particle, SelfFinest };
    Kind kind = Kind::Particle;
    int cells = 0; // reference resolution for SelfFinest
};

/// Runs the base config on at least three strictly increasing cell counts and
/// fits the W1 error against dx in log-log coordinates.
SweepResult convergence_sweep(const RunConfig& base, const std::vector<int>& cells,
                              const OracleSpec& oracle);

/// Runs the base (relaxation) scheme for each epsilon and measures the W1
/// distance to its limit scheme at identical resolution; fits against epsilon.
SweepResult epsilon_sweep(const RunConfig& base, const std::vector<double>& epsilons);

/// Summary CSV: "dx,epsilon,w1_error,mass_drift,steps,wall_ms" rows at 17
/// significant digits; with_slope appends a trailing "# slope=<value>" line.
std::string summary_csv_text(const std::vector<SweepRow>& rows, const double* slope);
void write_summary_csv(const std::string& path, const std::vector<SweepRow>& rows,
                       const double* slope);

} // namespace aggrelax
