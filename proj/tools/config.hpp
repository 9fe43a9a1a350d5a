#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace labsolve::cli {

/// Bad or missing arguments; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kEnvPrefix = "LABS_";

/// "seeds" -> "LABS_SEEDS", "p-comb" -> "LABS_P_COMB".
std::string env_name(const std::string& option);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_environment();

/// Options of one subcommand, filled by precedence
/// command line > config file > environment > default.
class OptionSet {
 public:
  enum class Scope { config, execution };

  explicit OptionSet(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, T& var, const std::string& help,
                   Scope scope = Scope::config) {
    auto* opt = app_->add_option("--" + name, var, help)->capture_default_str();
    entries_.push_back({name, opt, [&var] { return nlohmann::json(var); }, scope});
    return opt;
  }
  CLI::Option* flag(const std::string& name, bool& var, const std::string& help);

  /// Fills options missing from the command line. Unknown config keys are
  /// ignored so one file can serve several subcommands.
  void apply_layers(const nlohmann::json& config_file, const EnvLookup& env);

  /// Where each option's value came from: flag, config, env or default.
  const std::map<std::string, std::string>& sources() const { return sources_; }
  bool given(const std::string& name) const;

  /// Resolved values of config-scoped options.
  nlohmann::json resolved() const;
  /// Values that may differ between equivalent runs (paths, worker counts).
  nlohmann::json execution() const;

 private:
  struct Entry {
    std::string name;
    CLI::Option* option;
    std::function<nlohmann::json()> value;
    Scope scope;
  };
  CLI::App* app_;
  std::vector<Entry> entries_;
  std::map<std::string, std::string> sources_;
};

/// Reads a flat JSON object of option names; empty path gives an empty object.
nlohmann::json load_config_file(const std::string& path);

/// "a:b" (inclusive) or "a".
std::pair<std::uint64_t, std::uint64_t> parse_inclusive_range(const std::string& text);
/// "a:b", "a:b:step" (inclusive) or "a,b,c".
std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::string> split(const std::string& text, char sep);

}  // namespace labsolve::cli
