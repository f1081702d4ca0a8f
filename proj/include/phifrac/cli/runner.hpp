#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace phifrac::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitInvalid = 2,
    kExitNotConverged = 3,
    kExitResource = 4,
};

/// Command-line values; when set they win over the config file.
struct Overrides {
    std::optional<double> tol;
    std::optional<std::size_t> kmax;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    bool quiet = false;
};

struct RunConfig {
    std::string mode;  ///< trajectory, sfs, cifs, fif or verify
    nlohmann::json document;
    std::filesystem::path base_dir;  ///< relative data files resolve here
    double tol = 1e-9;
    std::size_t kmax = 10000;
    std::optional<double> grid_pitch;
    std::optional<double> decimation_pitch;
    std::uint64_t seed = 20240501;
    std::filesystem::path out_dir = ".";
    bool quiet = false;
};

/// Validates the top-level fields. Throws Error(InvalidInput) naming the
/// offending field.
RunConfig parse_run_config(const nlohmann::json& document, const std::filesystem::path& base_dir,
                           const Overrides& overrides = {});
RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides = {});

struct RunOutcome {
    int exit_code = kExitOk;
    std::string message;
    nlohmann::ordered_json report;
    std::vector<std::filesystem::path> artifacts;
};

/// Runs one mode and writes its artifacts into out_dir. Library errors
/// propagate as phifrac::Error.
RunOutcome run(const RunConfig& config);

/// Load + run with every failure mapped onto the exit-code contract.
/// Diagnostics go to `err`; a one-line summary goes to `out` unless quiet.
int run_main(const std::optional<std::filesystem::path>& config_path, const Overrides& overrides,
             std::ostream& out, std::ostream& err);

/// The built-in verification suite. Deterministic for a given seed.
nlohmann::ordered_json run_verify_suite(std::uint64_t seed);

} // namespace phifrac::cli
