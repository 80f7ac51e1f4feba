#include "aalloc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace aalloc {

namespace {

using nlohmann::json;

int parse_memory_mb(const json& v, const std::string& where) {
  if (v.is_number()) {
    double mb = v.get<double>();
    if (mb <= 0 || mb != std::floor(mb))
      throw ParseError(where + ": memory must be a positive integer MB count");
    return static_cast<int>(mb);
  }
  if (v.is_string()) {
    std::istringstream ss(v.get<std::string>());
    double value = 0;
    std::string unit;
    ss >> value >> unit;
    if (ss.fail()) throw ParseError(where + ": cannot parse memory value '" + v.get<std::string>() + "'");
    std::transform(unit.begin(), unit.end(), unit.begin(), ::toupper);
    double mb;
    if (unit == "MB" || unit.empty()) {
      mb = value;
    } else if (unit == "GB") {
      mb = value * 1024.0;
    } else {
      throw ParseError(where + ": unknown memory unit '" + unit + "' (use MB or GB)");
    }
    if (mb <= 0 || mb != std::floor(mb)) throw ParseError(where + ": memory must resolve to whole MB");
    return static_cast<int>(mb);
  }
  throw ParseError(where + ": memory must be a number (MB) or a string with MB/GB suffix");
}

Asil parse_asil(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": ASIL must be a string (QM, A..D)");
  auto a = Asil::parse(v.get<std::string>());
  if (!a) throw ParseError(where + ": invalid ASIL '" + v.get<std::string>() + "'");
  return *a;
}

std::array<double, 4> parse_level_table(const json& v, const std::string& where) {
  std::array<double, 4> out{};
  static const char* names[4] = {"A", "B", "C", "D"};
  for (int h = 0; h < 4; ++h) {
    if (!v.contains(names[h])) throw ParseError(where + ": missing ASIL " + names[h] + " entry");
    out[h] = v.at(names[h]).get<double>();
  }
  return out;
}

}  // namespace

ProblemInstance parse_instance(const json& j) {
  ProblemInstance inst;
  if (!j.is_object()) throw ParseError("instance: top level must be an object");
  inst.lifetime_hours = j.value("lifetime_hours", 5000.0);
  inst.decompose_all = j.value("decompose_all", false);

  for (const auto& je : j.value("ecus", json::array())) {
    Ecu e;
    e.id = je.value("id", "");
    if (e.id.empty()) throw ParseError("ecus: every ECU needs an id");
    e.asil = parse_asil(je.at("asil"), "ecu " + e.id);
    e.memory_mb = parse_memory_mb(je.at("memory"), "ecu " + e.id);
    e.failure_rate_per_hour = je.at("failure_rate_per_hour").get<double>();
    inst.ecus.push_back(std::move(e));
  }
  for (const auto& app : j.value("applications", json::array()))
    inst.applications.push_back(app.get<std::string>());

  for (const auto& jt : j.value("tasks", json::array())) {
    Task t;
    t.id = jt.value("id", "");
    if (t.id.empty()) throw ParseError("tasks: every task needs an id");
    const std::string where = "task " + t.id;
    t.asil = parse_asil(jt.at("asil"), where);
    t.application_id = jt.value("application", "");
    if (!jt.contains("memory")) throw ParseError(where + ": missing memory table");
    static const char* names[4] = {"A", "B", "C", "D"};
    for (int h = 0; h < 4; ++h) {
      if (!jt.at("memory").contains(names[h]))
        throw ParseError(where + ": memory table missing ASIL " + names[h]);
      t.memory_mb[h] = parse_memory_mb(jt.at("memory").at(names[h]), where);
    }
    size_t ne = inst.ecus.size();
    t.wcet_ms.assign(ne, {});
    t.dev_cost.assign(ne, {});
    t.localization.assign(ne, 1);
    if (jt.contains("localization")) {
      for (auto& [ecu_id, v] : jt.at("localization").items()) {
        int k = inst.ecu_index(ecu_id);
        if (k < 0) throw ParseError(where + ": localization references unknown ECU " + ecu_id);
        t.localization[k] = v.get<int>() ? 1 : 0;
      }
    }
    for (const char* table : {"wcet_ms", "dev_cost"}) {
      if (!jt.contains(table)) throw ParseError(where + ": missing " + std::string(table) + " table");
      for (auto& [ecu_id, v] : jt.at(table).items()) {
        int k = inst.ecu_index(ecu_id);
        if (k < 0)
          throw ParseError(where + ": " + table + " references unknown ECU " + ecu_id);
        auto row = parse_level_table(v, where + "/" + table + "/" + ecu_id);
        (std::string(table) == "wcet_ms" ? t.wcet_ms[k] : t.dev_cost[k]) = row;
      }
      for (size_t k = 0; k < ne; ++k) {
        if (!t.localization[k]) continue;
        const auto& row = std::string(table) == "wcet_ms" ? t.wcet_ms[k] : t.dev_cost[k];
        bool all_zero = std::all_of(row.begin(), row.end(), [](double x) { return x == 0; });
        if (all_zero && !jt.at(table).contains(inst.ecus[k].id))
          throw ParseError(where + ": " + table + " missing entry for localized ECU " +
                           inst.ecus[k].id);
      }
    }
    inst.tasks.push_back(std::move(t));
  }
  for (const auto& je : j.value("edges", json::array())) {
    DependencyEdge e;
    e.from_task = je.at("from").get<std::string>();
    e.to_task = je.at("to").get<std::string>();
    e.wcrt_ms = je.value("wcrt_ms", 0.0);
    inst.edges.push_back(std::move(e));
  }
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open instance file: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return parse_instance(j);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

nlohmann::json instance_to_json(const ProblemInstance& instance) {
  json j;
  j["lifetime_hours"] = instance.lifetime_hours;
  j["decompose_all"] = instance.decompose_all;
  j["applications"] = instance.applications;
  j["ecus"] = json::array();
  for (const auto& e : instance.ecus) {
    j["ecus"].push_back({{"id", e.id},
                         {"asil", e.asil.name()},
                         {"memory", e.memory_mb},
                         {"failure_rate_per_hour", e.failure_rate_per_hour}});
  }
  static const char* names[4] = {"A", "B", "C", "D"};
  j["tasks"] = json::array();
  for (const auto& t : instance.tasks) {
    json jt;
    jt["id"] = t.id;
    jt["asil"] = t.asil.name();
    jt["application"] = t.application_id;
    for (int h = 0; h < 4; ++h) jt["memory"][names[h]] = t.memory_mb[h];
    for (size_t k = 0; k < instance.ecus.size(); ++k) {
      if (!t.localization[k]) {
        jt["localization"][instance.ecus[k].id] = 0;
        continue;
      }
      for (int h = 0; h < 4; ++h) {
        jt["wcet_ms"][instance.ecus[k].id][names[h]] = t.wcet_ms[k][h];
        jt["dev_cost"][instance.ecus[k].id][names[h]] = t.dev_cost[k][h];
      }
    }
    j["tasks"].push_back(std::move(jt));
  }
  j["edges"] = json::array();
  for (const auto& e : instance.edges)
    j["edges"].push_back({{"from", e.from_task}, {"to", e.to_task}, {"wcrt_ms", e.wcrt_ms}});
  return j;
}

void save_instance(const ProblemInstance& instance, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << instance_to_json(instance).dump(2) << "\n";
}

nlohmann::json solution_to_json(const ProblemInstance& instance,
                                const AllocationSolution& solution) {
  json j;
  j["cost_total"] = solution.cost_total;
  for (const auto& [app, mk] : solution.makespan_per_app) j["makespan_ms"][app] = mk;
  j["placements"] = json::array();
  for (const auto& p : solution.placements) {
    int i = instance.task_index(p.task_id);
    int k = instance.ecu_index(p.ecu_id);
    double wcet = (i >= 0 && k >= 0) ? instance.tasks[i].wcet_ms[k][p.asil_value - 1] : 0.0;
    j["placements"].push_back({{"task", p.task_id},
                               {"ecu", p.ecu_id},
                               {"asil", Asil::from_value(p.asil_value).name()},
                               {"start_ms", p.start_ms},
                               {"wcet_ms", wcet}});
  }
  for (const auto& [task, scheme] : solution.scheme_per_task) {
    j["schemes"][task] = {{"A", scheme.alpha[0]},
                          {"B", scheme.alpha[1]},
                          {"C", scheme.alpha[2]},
                          {"D", scheme.alpha[3]}};
  }
  for (const auto& [pair, theta] : solution.ordering)
    j["theta"][pair.first + "|" + pair.second] = theta;
  return j;
}

std::string schedule_table(const ProblemInstance& instance, const AllocationSolution& solution) {
  std::vector<Placement> rows = solution.placements;
  std::stable_sort(rows.begin(), rows.end(), [](const Placement& a, const Placement& b) {
    if (a.ecu_id != b.ecu_id) return a.ecu_id < b.ecu_id;
    return a.start_ms < b.start_ms;
  });
  std::ostringstream os;
  os << "ecu    task   asil   start_ms   finish_ms\n";
  for (const auto& p : rows) {
    int i = instance.task_index(p.task_id);
    int k = instance.ecu_index(p.ecu_id);
    double wcet = (i >= 0 && k >= 0) ? instance.tasks[i].wcet_ms[k][p.asil_value - 1] : 0.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-6s %-6s %-6s %8.2f %11.2f\n", p.ecu_id.c_str(),
                  p.task_id.c_str(), Asil::from_value(p.asil_value).name().c_str(), p.start_ms,
                  p.start_ms + wcet);
    os << buf;
  }
  return os.str();
}

}  // namespace aalloc
