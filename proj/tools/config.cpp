#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

namespace labsolve::cli {

std::string env_name(const std::string& option) {
  std::string out = kEnvPrefix;
  for (char c : option) {
    out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

EnvLookup process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

CLI::Option* OptionSet::flag(const std::string& name, bool& var, const std::string& help) {
  auto* opt = app_->add_flag("--" + name, var, help);
  entries_.push_back({name, opt, [&var] { return nlohmann::json(var); }, Scope::config});
  return opt;
}

void OptionSet::apply_layers(const nlohmann::json& config_file, const EnvLookup& env) {
  for (auto& e : entries_) {
    if (e.option->count() > 0) {
      sources_[e.name] = "flag";
      continue;
    }
    std::optional<std::string> text;
    std::string source;
    if (config_file.contains(e.name)) {
      const auto& v = config_file[e.name];
      text = v.is_string() ? v.get<std::string>() : v.dump();
      source = "config";
    } else if (auto from_env = env(env_name(e.name))) {
      text = std::move(from_env);
      source = "env";
    }
    if (!text) {
      sources_[e.name] = "default";
      continue;
    }
    e.option->clear();
    e.option->add_result(*text);
    try {
      e.option->run_callback();
    } catch (const CLI::Error& err) {
      throw UsageError("--" + e.name + " from " + source + ": " + err.what());
    }
    sources_[e.name] = source;
  }
}

bool OptionSet::given(const std::string& name) const {
  const auto it = sources_.find(name);
  return it != sources_.end() && it->second != "default";
}

nlohmann::json OptionSet::resolved() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& e : entries_) {
    if (e.scope == Scope::config) out[e.name] = e.value();
  }
  return out;
}

nlohmann::json OptionSet::execution() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& e : entries_) {
    if (e.scope == Scope::execution) out[e.name] = e.value();
  }
  return out;
}

nlohmann::json load_config_file(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");
  return j;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

namespace {

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw UsageError("expected a non-negative integer in '" + context + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError("integer out of range in '" + context + "'");
  }
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> parse_inclusive_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const auto v = parse_u64(parts[0], text);
    return {v, v};
  }
  if (parts.size() != 2) throw UsageError("expected a:b, got '" + text + "'");
  const auto a = parse_u64(parts[0], text), b = parse_u64(parts[1], text);
  if (b < a) throw UsageError("empty range '" + text + "'");
  return {a, b};
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("expected a:b or a:b:step, got '" + text + "'");
    const auto a = parse_u64(parts[0], text), b = parse_u64(parts[1], text);
    const auto step = parts.size() == 3 ? parse_u64(parts[2], text) : 1;
    if (step == 0 || b < a) throw UsageError("empty range '" + text + "'");
    for (auto v = a; v <= b; v += step) out.push_back(v);
    return out;
  }
  for (const auto& p : split(text, ',')) out.push_back(parse_u64(p, text));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated list of numbers, got '" + text + "'");
    }
  }
  return out;
}

}  // namespace labsolve::cli
