#ifndef LPCS_TOOLS_CLI_HPP
#define LPCS_TOOLS_CLI_HPP

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <lpcs/experiments.hpp>

namespace lpcs::cli {

/// Config or flag error, carrying the offending key and, for file input, the line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    ExperimentConfig      experiment{example1_config()};
    std::filesystem::path out_dir{"."};
    bool                  figures{true};
    bool                  compare_thresholds{false};
    std::size_t           trial_index{0};
    std::size_t           noise_samples{128};
};

/// key -> (value, source description)
using Settings = std::map<std::string, std::pair<std::string, std::string>>;

/// Flat "key = value" text, '#' starts a comment. Duplicate or unknown keys are errors.
[[nodiscard]] Settings parse_settings_text(const std::string& text, const std::string& source_name);

/// Builds a validated config. The preset is applied first, remaining keys override it.
[[nodiscard]] CliConfig build_config(const Settings& settings);

/// Entry point shared by the executable and the tests. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lpcs::cli

#endif // LPCS_TOOLS_CLI_HPP
