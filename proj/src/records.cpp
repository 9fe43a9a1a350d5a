#include "labs/records.hpp"

#include <algorithm>
#include <fstream>

#include "labs/errors.hpp"

namespace labsolve {

using nlohmann::json;

json to_json(const RunRecord& r) {
  json j;
  j["n"] = r.n;
  j["method"] = to_string(r.method);
  j["replicate"] = r.replicate_id;
  j["seed"] = r.seed;
  j["found_optimum"] = r.found_optimum;
  j["evals_to_solution"] = r.evals_to_solution ? json(*r.evals_to_solution) : json(nullptr);
  j["best_energy"] = r.best_energy;
  j["target_energy"] = r.target_energy;
  j["generations"] = r.generations;
  j["evaluations"] = r.evaluations;
  j["best_sequence"] = r.best_sequence;
  j["timing"] = {{"wall_clock_classical", r.wall_clock_classical},
                 {"wall_clock_quantum", r.wall_clock_quantum}};
  j["metadata"] = r.metadata;
  return j;
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  r.n = j.at("n").get<std::size_t>();
  r.method = parse_method(j.at("method").get<std::string>());
  r.replicate_id = j.at("replicate").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.found_optimum = j.at("found_optimum").get<bool>();
  if (j.contains("evals_to_solution") && !j["evals_to_solution"].is_null()) {
    r.evals_to_solution = j["evals_to_solution"].get<std::uint64_t>();
  }
  if (r.found_optimum != r.evals_to_solution.has_value()) {
    throw InvalidInput("run record: evals_to_solution must be present iff found_optimum");
  }
  r.best_energy = j.at("best_energy").get<std::int64_t>();
  r.target_energy = j.value("target_energy", std::int64_t{0});
  r.generations = j.value("generations", std::uint64_t{0});
  r.evaluations = j.value("evaluations", std::uint64_t{0});
  r.best_sequence = j.value("best_sequence", std::string{});
  if (j.contains("timing")) {
    r.wall_clock_classical = j["timing"].value("wall_clock_classical", 0.0);
    r.wall_clock_quantum = j["timing"].value("wall_clock_quantum", 0.0);
  }
  if (j.contains("metadata")) r.metadata = j["metadata"];
  return r;
}

std::vector<RunRecord> read_run_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<RunRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(run_record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InvalidInput(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void append_run_records(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::string canonical_jsonl(std::vector<RunRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.key() < b.key(); });
  std::string text;
  for (const auto& r : records) {
    json j = to_json(r);
    j.erase("timing");
    if (j["metadata"].is_object()) j["metadata"].erase("execution");
    text += j.dump();
    text += '\n';
  }
  return text;
}

}  // namespace labsolve
