#include <iostream>

#include "CLI11.hpp"
#include "phifrac/cli/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Non-stationary fixed-point iteration and fractal construction"};
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::size_t kmax = 0;
    bool quiet = false;
    auto* config_opt = app.add_option("--config", config, "JSON run description (omit to run the verify suite)");
    auto* out_opt = app.add_option("--out", out, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed for randomized checks");
    auto* tol_opt = app.add_option("--tol", tol, "convergence tolerance");
    auto* kmax_opt = app.add_option("--kmax", kmax, "iteration cap");
    app.add_flag("--quiet", quiet, "no summary line on stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : phifrac::cli::kExitInvalid;
    }

    phifrac::cli::Overrides ov;
    if (*out_opt) ov.out_dir = out;
    if (*seed_opt) ov.seed = seed;
    if (*tol_opt) ov.tol = tol;
    if (*kmax_opt) ov.kmax = kmax;
    ov.quiet = quiet;
    std::optional<std::filesystem::path> path;
    if (*config_opt) path = config;
    return phifrac::cli::run_main(path, ov, std::cout, std::cerr);
}
