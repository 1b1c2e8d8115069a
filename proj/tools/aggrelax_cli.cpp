#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aggrelax/errors.hpp"
#include "aggrelax/runner.hpp"

namespace {

struct CliOptions {
    std::string scheme = "splitting";
    std::string potential = "newtonian";
    double epsilon = 1e-7;
    int cells = 1500;
    double c = 1.0;
    double cfl = 0.9;
    double t_final = 1.2;
    std::string domain = "-1,1";
    std::string init = "0.5@-0.5,0.5@0.5";
    std::string boundary = "zero";
    std::string out;
    double fp_tol = 1e-10;
    int fp_max_iter = 50;
};

void add_run_flags(CLI::App& cmd, CliOptions& opts, bool with_cells) {
    cmd.add_option("--scheme", opts.scheme, "splitting|wellbalanced|rusanov|gv")
        ->capture_default_str();
    cmd.add_option("--potential", opts.potential, "newtonian|quadratic")->capture_default_str();
    cmd.add_option("--epsilon", opts.epsilon, "relaxation parameter")->capture_default_str();
    if (with_cells) {
        cmd.add_option("--cells", opts.cells, "number of grid cells")->capture_default_str();
    }
    cmd.add_option("--c", opts.c, "relaxation wave speed")->capture_default_str();
    cmd.add_option("--cfl", opts.cfl, "CFL number in (0,1]")->capture_default_str();
    cmd.add_option("--tfinal", opts.t_final, "final time")->capture_default_str();
    cmd.add_option("--domain", opts.domain, "XMIN,XMAX")->capture_default_str();
    cmd.add_option("--init", opts.init, "\"m1@x1,m2@x2,...\" or tanh")->capture_default_str();
    cmd.add_option("--boundary", opts.boundary, "zero|exact-tanh")->capture_default_str();
    cmd.add_option("--out", opts.out, "output CSV path");
    cmd.add_option("--fp-tol", opts.fp_tol, "fixed-point tolerance")->capture_default_str();
    cmd.add_option("--fp-maxiter", opts.fp_max_iter, "fixed-point iteration cap")
        ->capture_default_str();
}

aggrelax::RunConfig make_config(const CliOptions& opts) {
    aggrelax::RunConfig config;
    config.scheme = aggrelax::scheme_from_name(opts.scheme);
    config.potential = aggrelax::potential_from_name(opts.potential);
    config.epsilon = opts.epsilon;
    config.c = opts.c;
    config.cfl = opts.cfl;
    config.n_cells = opts.cells;
    config.t_final = opts.t_final;
    const std::size_t comma = opts.domain.find(',');
    if (comma == std::string::npos) {
        throw aggrelax::ConfigError("domain must be XMIN,XMAX, got '" + opts.domain + "'");
    }
    try {
        config.x_min = std::stod(opts.domain.substr(0, comma));
        config.x_max = std::stod(opts.domain.substr(comma + 1));
    } catch (const std::exception&) {
        throw aggrelax::ConfigError("domain must be XMIN,XMAX, got '" + opts.domain + "'");
    }
    config.init = aggrelax::parse_init(opts.init);
    if (opts.boundary == "zero") {
        config.boundary = aggrelax::BoundaryCondition::Mode::ZeroInflow;
    } else if (opts.boundary == "exact-tanh") {
        config.boundary = aggrelax::BoundaryCondition::Mode::ExactTanh;
    } else {
        throw aggrelax::ConfigError("unknown boundary '" + opts.boundary +
                                    "' (expected zero or exact-tanh)");
    }
    if (opts.fp_max_iter < 1) throw aggrelax::ConfigError("--fp-maxiter must be at least 1");
    if (!(opts.fp_tol >= 0.0)) throw aggrelax::ConfigError("--fp-tol must be nonnegative");
    config.fixed_point = {opts.fp_tol, opts.fp_max_iter};
    return config;
}

int run_command(const CliOptions& opts) {
    const aggrelax::RunConfig config = make_config(opts);
    const aggrelax::RunReport report = aggrelax::run(config);
    if (!opts.out.empty()) {
        aggrelax::write_state_csv(opts.out, report.grid, report.final_state);
    }
    const aggrelax::SweepRow row{report.grid.dx,   config.epsilon, report.w1_error,
                                 report.mass_drift, report.steps,   report.wall_ms};
    std::fputs(aggrelax::summary_csv_text({row}, nullptr).c_str(), stdout);
    return 0;
}

int sweep_dx_command(const CliOptions& opts, const std::vector<int>& cells, int ref_cells) {
    const aggrelax::RunConfig config = make_config(opts);
    aggrelax::OracleSpec oracle;
    if (ref_cells > 0) {
        oracle.kind = aggrelax::OracleSpec::Kind::SelfFinest;
        oracle.cells = ref_cells;
    }
    const aggrelax::SweepResult result = aggrelax::convergence_sweep(config, cells, oracle);
    if (!opts.out.empty()) {
        aggrelax::write_summary_csv(opts.out, result.rows, &result.slope);
    }
    std::fputs(aggrelax::summary_csv_text(result.rows, &result.slope).c_str(), stdout);
    return 0;
}

int sweep_eps_command(const CliOptions& opts, const std::vector<double>& epsilons) {
    const aggrelax::RunConfig config = make_config(opts);
    const aggrelax::SweepResult result = aggrelax::epsilon_sweep(config, epsilons);
    if (!opts.out.empty()) {
        aggrelax::write_summary_csv(opts.out, result.rows, &result.slope);
    }
    std::fputs(aggrelax::summary_csv_text(result.rows, &result.slope).c_str(), stdout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D finite-volume solvers for the aggregation equation via Jin-Xin relaxation"};
    app.require_subcommand(1);

    CliOptions opts;
    std::vector<int> sweep_cells;
    std::vector<double> sweep_epsilons;
    int ref_cells = 0;

    CLI::App* cmd_run = app.add_subcommand("run", "single simulation");
    add_run_flags(*cmd_run, opts, true);

    CLI::App* cmd_dx = app.add_subcommand("sweep-dx", "convergence sweep over cell counts");
    add_run_flags(*cmd_dx, opts, false);
    cmd_dx->add_option("--cells", sweep_cells, "N1,N2,... (at least three)")
        ->delimiter(',')
        ->required();
    cmd_dx->add_option("--ref-cells", ref_cells,
                       "self-reference resolution (default: exact particle oracle)");

    CLI::App* cmd_eps = app.add_subcommand("sweep-eps", "distance-to-limit sweep over epsilon");
    add_run_flags(*cmd_eps, opts, true);
    cmd_eps->add_option("--epsilons", sweep_epsilons, "E1,E2,...")->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_run->parsed()) return run_command(opts);
        if (cmd_dx->parsed()) return sweep_dx_command(opts, sweep_cells, ref_cells);
        if (cmd_eps->parsed()) return sweep_eps_command(opts, sweep_epsilons);
    } catch (const aggrelax::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const aggrelax::NumericsError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
