/*
 * Copyright 2026 The GoTo Bench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "goto_bench/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <variant>
#include <vector>

#include "goto_bench/text.hpp"

namespace goto_bench {

namespace {

using Value = std::variant<double, std::string, std::vector<double>>;

struct Field {
  std::function<void(RunConfig&, const Value&, const std::string& where)> set;
  std::function<std::string(const RunConfig&)> get;
};

double as_number(const Value& v, const std::string& where) {
  if (const double* d = std::get_if<double>(&v)) return *d;
  throw ConfigError(where + ": expected a number");
}

int as_int(const Value& v, const std::string& where) {
  const double d = as_number(v, where);
  if (d != std::floor(d) || std::fabs(d) > 2e9) {
    throw ConfigError(where + ": expected an integer");
  }
  return static_cast<int>(d);
}

template <typename Group>
Field real(Group RunConfig::*group, double Group::*member) {
  return {[=](RunConfig& c, const Value& v, const std::string& w) {
            (c.*group).*member = as_number(v, w);
          },
          [=](const RunConfig& c) { return format_double((c.*group).*member); }};
}

template <typename Group>
Field integer(Group RunConfig::*group, int Group::*member) {
  return {[=](RunConfig& c, const Value& v, const std::string& w) {
            (c.*group).*member = as_int(v, w);
          },
          [=](const RunConfig& c) { return std::to_string((c.*group).*member); }};
}

Field real_list(std::vector<double> CommandGrid::*member) {
  return {[=](RunConfig& c, const Value& v, const std::string& w) {
            const auto* list = std::get_if<std::vector<double>>(&v);
            if (list == nullptr) throw ConfigError(w + ": expected an array of numbers");
            c.grid.*member = *list;
          },
          [=](const RunConfig& c) {
            std::string s = "[";
            const auto& list = c.grid.*member;
            for (std::size_t i = 0; i < list.size(); ++i) {
              if (i > 0) s += ", ";
              s += format_double(list[i]);
            }
            return s + "]";
          }};
}

using FieldTable = std::map<std::string, std::map<std::string, Field>>;

const FieldTable& fields() {
  static const FieldTable table = [] {
    FieldTable t;
    auto& s = t["StepperConfig"];
    s["max_step_len"] = real(&RunConfig::stepper, &StepperConfig::max_step_len);
    s["max_step_yaw"] = real(&RunConfig::stepper, &StepperConfig::max_step_yaw);
    s["stance_width"] = real(&RunConfig::stepper, &StepperConfig::stance_width);
    s["lateral_margin"] = real(&RunConfig::stepper, &StepperConfig::lateral_margin);
    s["step_duration"] = real(&RunConfig::stepper, &StepperConfig::step_duration);
    s["settle_duration"] = real(&RunConfig::stepper, &StepperConfig::settle_duration);
    s["k_lin"] = real(&RunConfig::stepper, &StepperConfig::k_lin);
    s["k_ang"] = real(&RunConfig::stepper, &StepperConfig::k_ang);
    s["e_base"] = real(&RunConfig::stepper, &StepperConfig::e_base);
    s["stance_pos_tol"] = real(&RunConfig::stepper, &StepperConfig::stance_pos_tol);
    s["stance_yaw_tol"] = real(&RunConfig::stepper, &StepperConfig::stance_yaw_tol);

    auto& r = t["RewardConfig"];
    r["w_c"] = real(&RunConfig::reward, &RewardConfig::w_c);
    r["a_p"] = real(&RunConfig::reward, &RewardConfig::a_p);
    r["a_o"] = real(&RunConfig::reward, &RewardConfig::a_o);
    r["w_p"] = real(&RunConfig::reward, &RewardConfig::w_p);
    r["w_o"] = real(&RunConfig::reward, &RewardConfig::w_o);
    r["k_action"] = real(&RunConfig::reward, &RewardConfig::k_action);
    r["k_energy"] = real(&RunConfig::reward, &RewardConfig::k_energy);

    auto& m = t["CemConfig"];
    m["population"] = integer(&RunConfig::cem, &CemConfig::population);
    m["elites"] = integer(&RunConfig::cem, &CemConfig::elites);
    m["iterations"] = integer(&RunConfig::cem, &CemConfig::iterations);
    m["init_std"] = real(&RunConfig::cem, &CemConfig::init_std);
    m["std_floor"] = real(&RunConfig::cem, &CemConfig::std_floor);
    m["tasks_per_candidate"] = integer(&RunConfig::cem, &CemConfig::tasks_per_candidate);
    m["horizon"] = integer(&RunConfig::cem, &CemConfig::horizon);
    m["mirror_probability"] = real(&RunConfig::cem, &CemConfig::mirror_probability);
    m["smoothing"] = real(&RunConfig::cem, &CemConfig::smoothing);

    auto& g = t["CommandGrid"];
    g["distances"] = real_list(&CommandGrid::distances);
    g["approach_angles"] = real_list(&CommandGrid::approach_angles);
    g["headings"] = real_list(&CommandGrid::headings);
    g["trials_per_command"] = integer(&RunConfig::grid, &CommandGrid::trials_per_command);
    g["perturb_scale"] = real(&RunConfig::grid, &CommandGrid::perturb_scale);

    auto& k = t["Constellation"];
    k["radius"] = {[](RunConfig& c, const Value& v, const std::string& w) {
                     c.constellation_radius = as_number(v, w);
                   },
                   [](const RunConfig& c) { return format_double(c.constellation_radius); }};
    k["count"] = {[](RunConfig& c, const Value& v, const std::string& w) {
                    c.constellation_count = as_int(v, w);
                  },
                  [](const RunConfig& c) { return std::to_string(c.constellation_count); }};

    auto& run = t["Run"];
    run["seed"] = {[](RunConfig& c, const Value& v, const std::string& w) {
                     const double d = as_number(v, w);
                     if (d < 0 || d != std::floor(d) || d > 9.007199254740992e15) {
                       throw ConfigError(w + ": seed must be a non-negative integer");
                     }
                     c.seed = static_cast<std::uint64_t>(d);
                   },
                   [](const RunConfig& c) { return std::to_string(c.seed); }};
    run["output_dir"] = {[](RunConfig& c, const Value& v, const std::string& w) {
                           const auto* s = std::get_if<std::string>(&v);
                           if (s == nullptr) throw ConfigError(w + ": expected a string");
                           c.output_dir = *s;
                         },
                         [](const RunConfig& c) { return "\"" + c.output_dir + "\""; }};
    return t;
  }();
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Removes a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse '" + text + "' as a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw ConfigError(where + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

Value parse_value(const std::string& raw, const std::string& where) {
  const std::string text = trim(raw);
  if (text.empty()) throw ConfigError(where + ": missing value");
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') {
      throw ConfigError(where + ": unterminated string");
    }
    return text.substr(1, text.size() - 2);
  }
  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError(where + ": unterminated array");
    std::vector<double> list;
    const std::string body = trim(text.substr(1, text.size() - 2));
    if (body.empty()) return list;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      if (t.empty()) continue;  // trailing comma
      list.push_back(parse_number(t, where));
    }
    return list;
  }
  return parse_number(text, where);
}

}  // namespace

void RunConfig::validate() const {
  try {
    stepper.validate();
    reward.validate();
    cem.validate();
    grid.validate();
    Constellation::make_circle(constellation_radius, constellation_count);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

TrainingSetup RunConfig::training_setup() const {
  TrainingSetup s;
  s.stepper = stepper;
  s.reward = reward;
  s.constellation = Constellation::make_circle(constellation_radius, constellation_count);
  s.perturb_scale = grid.perturb_scale;
  return s;
}

BenchSetup RunConfig::bench_setup() const {
  BenchSetup s;
  s.stepper = stepper;
  return s;
}

RunConfig parse_run_config(const std::string& text, const std::string& source) {
  RunConfig config;
  const FieldTable& table = fields();
  const std::map<std::string, Field>* section = nullptr;
  std::string section_name;
  std::stringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where + ": malformed section header");
      section_name = trim(body.substr(1, body.size() - 2));
      const auto it = table.find(section_name);
      if (it == table.end()) {
        throw ConfigError(where + ": unknown section [" + section_name + "]");
      }
      section = &it->second;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    if (section == nullptr) {
      throw ConfigError(where + ": key '" + key + "' outside of any section");
    }
    const auto it = section->find(key);
    if (it == section->end()) {
      throw ConfigError(where + ": unknown key '" + key + "' in [" + section_name + "]");
    }
    it->second.set(config, parse_value(body.substr(eq + 1), where + " (" + key + ")"),
                   where + " (" + key + ")");
  }
  config.validate();
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path);
}

std::string to_toml(const RunConfig& config) {
  std::string out;
  // Fixed section order; keys within a section in table order.
  for (const char* name : {"StepperConfig", "RewardConfig", "CemConfig", "CommandGrid",
                           "Constellation", "Run"}) {
    if (!out.empty()) out += "\n";
    out += std::string("[") + name + "]\n";
    for (const auto& [key, field] : fields().at(name)) {
      out += key + " = " + field.get(config) + "\n";
    }
  }
  return out;
}

}  // namespace goto_bench
