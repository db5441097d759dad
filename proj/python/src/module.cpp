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

// Python bindings: SE(2) geometry, reward, single trials, and the
// train/eval/trace commands.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "goto_bench/bench.hpp"
#include "goto_bench/reward.hpp"
#include "goto_bench/se2.hpp"

namespace py = pybind11;
using namespace goto_bench;

namespace {

py::dict record_dict(const TrialRecord& r) {
  py::dict d;
  d["controller"] = to_string(r.controller);
  d["label"] = r.command.label();
  d["seed"] = r.seed;
  d["success"] = r.success;
  d["pos_error"] = r.pos_error;
  d["ang_error"] = r.ang_error;
  d["time_s"] = r.time_s;
  d["footsteps"] = r.footsteps;
  d["energy_j"] = r.energy_j;
  d["energy_per_meter"] = r.energy_per_meter ? py::cast(*r.energy_per_meter) : py::none();
  d["actions"] = r.actions;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Desk-scale SE(2) GoTo locomotion benchmark";

  py::class_<Pose2>(m, "Pose2")
      .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
           py::arg("theta") = 0.0)
      .def_property_readonly("x", &Pose2::x)
      .def_property_readonly("y", &Pose2::y)
      .def_property_readonly("theta", &Pose2::theta)
      .def("compose", &Pose2::compose)
      .def("inverse", &Pose2::inverse)
      .def("between", &Pose2::between)
      .def("mirrored", &Pose2::mirrored)
      .def("__repr__", [](const Pose2& p) {
        return "Pose2(" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ", " +
               std::to_string(p.theta()) + ")";
      });

  py::class_<Constellation>(m, "Constellation")
      .def_static("circle", &Constellation::make_circle, py::arg("radius"), py::arg("count"))
      .def_static(
          "from_points",
          [](const std::vector<std::pair<double, double>>& pts) {
            std::vector<Vec2> v;
            for (const auto& [x, y] : pts) v.push_back({x, y});
            return Constellation::from_points(v);
          },
          py::arg("points"))
      .def_property_readonly("moment", &Constellation::moment)
      .def("__len__", &Constellation::size);

  py::class_<DistanceBreakdown>(m, "DistanceBreakdown")
      .def_readonly("total", &DistanceBreakdown::total)
      .def_readonly("positional", &DistanceBreakdown::positional)
      .def_readonly("rotational", &DistanceBreakdown::rotational_exact)
      .def_readonly("heading_error", &DistanceBreakdown::heading_error)
      .def_readonly("moment", &DistanceBreakdown::moment);

  m.def("wrap_angle", &wrap_angle, py::arg("theta"));
  m.def("orientation_error", &orientation_error, py::arg("theta_final"), py::arg("theta_goal"));
  m.def("constellation_distance", &constellation_distance, py::arg("a"), py::arg("b"),
        py::arg("constellation"));
  m.def(
      "constellation_reward",
      [](const DistanceBreakdown& d, double w_c) {
        RewardConfig cfg;
        cfg.w_c = w_c;
        return constellation_reward(d, cfg);
      },
      py::arg("distance"), py::arg("w_c") = RewardConfig{}.w_c);

  m.def(
      "run_trial",
      [](const std::string& controller, const std::string& command, std::uint64_t seed,
         double perturb_scale, const std::string& policy_path) {
        const ControllerId id = parse_controller_id(controller);
        std::optional<PolicyParams> policy;
        if (!policy_path.empty()) policy = load_policy(policy_path);
        py::gil_scoped_release release;
        const TrialRun run = run_trial(id, policy ? &*policy : nullptr, parse_command(command),
                                       seed, perturb_scale, BenchSetup{});
        py::gil_scoped_acquire acquire;
        return record_dict(run.record);
      },
      py::arg("controller"), py::arg("command"), py::arg("seed") = 1,
      py::arg("perturb_scale") = 0.0, py::arg("policy_path") = "",
      "Runs one trial; command is \"r,phi,theta\" in m and rad.");

  m.def(
      "train",
      [](const std::string& mode, const std::string& out_dir, const std::string& config_path,
         std::optional<std::uint64_t> seed, std::optional<int> iterations,
         std::optional<int> population, std::optional<int> threads) {
        cli::TrainOptions o;
        o.mode = mode;
        o.out_dir = out_dir;
        o.config_path = config_path;
        o.seed = seed;
        o.iterations = iterations;
        o.population = population;
        o.threads = threads;
        py::gil_scoped_release release;
        const cli::TrainOutputs out = cli::cmd_train(o);
        return std::make_pair(out.policy_path, out.log_path);
      },
      py::arg("mode") = "goto", py::arg("out_dir") = "", py::arg("config_path") = "",
      py::arg("seed") = py::none(), py::arg("iterations") = py::none(),
      py::arg("population") = py::none(), py::arg("threads") = py::none(),
      "Trains a policy; returns (policy_path, log_path).");

  m.def(
      "evaluate",
      [](const std::vector<std::string>& controllers, const std::vector<std::string>& policies,
         const std::string& out_dir, const std::string& config_path,
         std::optional<std::uint64_t> seed, std::optional<int> trials,
         std::optional<int> threads, const std::vector<double>& distances) {
        cli::EvalOptions o;
        o.grid_distances = distances;
        o.controllers = controllers;
        o.policy_paths = policies;
        o.out_dir = out_dir;
        o.config_path = config_path;
        o.seed = seed;
        o.trials = trials;
        o.threads = threads;
        py::gil_scoped_release release;
        return cli::cmd_eval(o);
      },
      py::arg("controllers") = std::vector<std::string>{"fsm", "agility2", "agility3"},
      py::arg("policies") = std::vector<std::string>{}, py::arg("out_dir") = "",
      py::arg("config_path") = "", py::arg("seed") = py::none(), py::arg("trials") = py::none(),
      py::arg("threads") = py::none(), py::arg("distances") = std::vector<double>{},
      "Runs the grid; returns the written file paths.");

  m.def(
      "trace",
      [](const std::string& controller, const std::string& command, const std::string& out_dir,
         const std::string& policy_path, std::optional<std::uint64_t> seed,
         double perturb_scale) {
        cli::TraceOptions o;
        o.controller = controller;
        o.command = command;
        o.out_dir = out_dir;
        o.policy_path = policy_path;
        o.seed = seed;
        o.perturb_scale = perturb_scale;
        py::gil_scoped_release release;
        return cli::cmd_trace(o);
      },
      py::arg("controller"), py::arg("command"), py::arg("out_dir") = "",
      py::arg("policy_path") = "", py::arg("seed") = py::none(), py::arg("perturb_scale") = 0.0,
      "Writes an SVG and CSV trace; returns the file paths.");

  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
