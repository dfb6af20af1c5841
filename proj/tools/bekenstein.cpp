// bekenstein: invariant suites, sweeps and the entropy-bound experiments
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bekenstein/errors.hpp"
#include "bekenstein/experiment.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

int emit(const bk::ExperimentConfig& c, const bk::RunResult& r) {
    if (c.out.empty() || c.out == "-")
        bk::write_csv(std::cout, r.records);
    else
        bk::write_csv(c.out, r.records);
    if (!c.json_out.empty()) {
        std::ofstream js(c.json_out);
        if (!js) throw bk::config_error("cannot write " + c.json_out);
        js << bk::records_json(c, r).dump(2) << '\n';
    }
    for (const auto& n : r.notes) std::cerr << "note: " << n << '\n';
    std::cerr << r.records.size() << " records, " << r.failures << " failed";
    if (r.numerical_errors) std::cerr << ", " << r.numerical_errors << " numerical errors";
    std::cerr << '\n';
    return bk::exit_status(r);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of modular-theory entropy bounds"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI file with key = value settings; command-line flags override it");

    bk::ExperimentConfig cfg;
    app.add_option("--suite", cfg.suite, "formcalc, stdsubspace, entropy, chiralnet or bound-sweep")
        ->capture_default_str();
    app.add_option("--n", cfg.n, "grid sizes, comma separated")->delimiter(',');
    app.add_option("--r", cfg.r, "region half-widths or widths R, comma separated")->delimiter(',');
    app.add_option("--alpha", cfg.alpha, "exponents in (0, 1/4), comma separated")->delimiter(',');
    app.add_option("--samples", cfg.samples, "random samples per point (suite default when omitted)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
    app.add_option("--out", cfg.out, "CSV output path, stdout when omitted");
    app.add_option("--json", cfg.json_out, "also write records as JSON");
    app.add_flag("--timing", cfg.timing, "fill wall_time_ms (output is then not byte-stable)");
    app.add_option("--inject-constant", cfg.inject_constant)->group("");  // negative control for converge

    for (auto* name : {"verify", "sweep", "bound", "converge"}) app.add_subcommand(name)->fallthrough();
    app.get_subcommand("verify")->description("run one invariant suite");
    app.get_subcommand("sweep")->description("damping inequalities on tubes, intervals and half-lines over N x R x alpha x samples");
    app.get_subcommand("bound")->description("headline ratio, energy sweep and the alpha route");
    app.get_subcommand("converge")->description("half-line dilation residual against N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "verify") return emit(cfg, bk::run_verify(cfg));
        if (cmd == "sweep") return emit(cfg, bk::run_sweep(cfg));
        if (cmd == "bound") return emit(cfg, bk::run_bound(cfg));
        bk::ConvergenceReport rep = bk::run_convergence(cfg);
        int rc = emit(cfg, rep.result);
        std::fprintf(stderr, "slope %.4f, %s\n", rep.slope, rep.decreasing ? "strictly decreasing" : "NOT decreasing");
        return rc;
    } catch (const bk::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const bk::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}
