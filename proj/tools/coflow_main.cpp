#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coflow/bench.hpp"
#include "coflow/fixtures.hpp"
#include "coflow/instance_io.hpp"
#include "coflow/report.hpp"
#include "coflow/version.hpp"

namespace {

using namespace coflow;

// 0 = success, 1 = validation failure, 2 = runtime/solver failure.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailure = 2;

std::string output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("COFLOW_OUT"); env != nullptr && *env != '\0') return env;
  return ".";
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string header(std::uint64_t seed, const std::string& config) {
  std::ostringstream out;
  out << "# tool=coflow " << kVersion << "\n# seed=" << seed << "\n# config=" << config << "\n";
  return out.str();
}

// Instance from --fixture-siv or a path; prints diagnostics on failure.
bool load_input(const std::string& path, bool fixture, Instance& inst) {
  if (fixture) {
    inst = fixture_saturated4();
    return true;
  }
  ParseResult parsed = load_instance(path);
  if (!parsed.instance) {
    for (const auto& issue : parsed.issues)
      std::cerr << (issue.path.empty() ? std::string("input") : issue.path) << ": " << issue.code
                << ": " << issue.message << "\n";
    return false;
  }
  inst = std::move(*parsed.instance);
  return true;
}

std::string key_csv(const FlowKey& key) {
  return std::to_string(key.source) + "," + std::to_string(key.sink) + "," +
         std::to_string(key.task);
}

int cmd_validate(const std::string& path) {
  ParseResult parsed = load_instance(path);
  if (parsed.instance) {
    std::cout << "valid: " << parsed.instance->m << " servers, " << parsed.instance->tasks.size()
              << " tasks, " << parsed.instance->num_flows() << " flows\n";
    return kOk;
  }
  for (const auto& issue : parsed.issues)
    std::cout << (issue.path.empty() ? std::string("input") : issue.path) << ": " << issue.code
              << ": " << issue.message << "\n";
  std::cout << "invalid: " << parsed.issues.size() << " issue(s)\n";
  return kInvalid;
}

int cmd_solve(const std::string& path, bool fixture, int horizon_override, bool export_lp,
              const std::string& out_flag) {
  Instance inst;
  if (!load_input(path, fixture, inst)) return kInvalid;
  const std::string dir = output_dir(out_flag);
  const std::string config = "solve input=" + (fixture ? std::string("fixture-siv") : path) +
                             (horizon_override > 0
                                  ? " horizon=" + std::to_string(horizon_override)
                                  : std::string());

  const int horizon = horizon_override > 0 ? horizon_override : compute_horizon(inst).F;
  const LpSolution sol =
      horizon_override > 0 ? solve_relaxation(inst, horizon_override) : solve_relaxation(inst);

  std::ostringstream csv;
  csv << header(0, config);
  csv << "# horizon=" << sol.horizon << "\n# objective=" << format_real(sol.objective) << "\n";
  csv << "task,weight,c_lp\n";
  for (const auto& task : inst.tasks)
    csv << task.id << "," << format_real(task.weight) << ","
        << format_real(sol.c_task.at(task.id)) << "\n";
  write_file(dir, "solution.csv", csv.str());

  if (export_lp) {
    std::ostringstream lp_text;
    write_lp_format(build_lp(inst, horizon), lp_text);
    write_file(dir, "model.lp", lp_text.str());
  }

  std::cout << "objective " << format_real(sol.objective) << " (horizon " << sol.horizon << ", "
            << sol.rounds << " rounds, " << sol.simplex_iterations << " simplex iterations)\n";
  for (const auto& task : inst.tasks)
    std::cout << "  task " << task.id << ": C_lp " << format_real(sol.c_task.at(task.id)) << "\n";
  return kOk;
}

int cmd_schedule(const std::string& path, bool fixture, std::uint64_t seed, int force_slot,
                 const std::string& out_flag) {
  Instance inst;
  if (!load_input(path, fixture, inst)) return kInvalid;
  const std::string dir = output_dir(out_flag);
  std::string config = "schedule input=" + (fixture ? std::string("fixture-siv") : path);
  if (force_slot >= 0) config += " force_slot=" + std::to_string(force_slot);

  TentativeAssignment assignment;
  if (force_slot >= 0) {
    for (const auto& [key, flow] : inst.all_flows()) assignment.starts.emplace_back(key, force_slot);
  } else {
    const LpSolution sol = solve_relaxation(inst);
    assignment = assign_tentative_starts(inst, sol, seed);
  }
  const Schedule schedule = build_schedule(inst, assignment);

  std::ostringstream groups_csv;
  groups_csv << header(seed, config) << "s,l,source,sink,task\n";
  for (const FlowGroup& group : schedule.groups)
    for (const FlowKey& key : group.members)
      groups_csv << group.s << "," << group.l << "," << key_csv(key) << "\n";
  write_file(dir, "schedule.csv", groups_csv.str());

  std::ostringstream assign_csv;
  assign_csv << header(seed, config) << "source,sink,task,s\n";
  for (const auto& [key, s] : assignment.starts) assign_csv << key_csv(key) << "," << s << "\n";
  write_file(dir, "assignment.csv", assign_csv.str());

  std::cout << schedule.groups.size() << " groups over " << inst.num_flows() << " flows\n";
  return kOk;
}

int cmd_simulate(const std::string& path, bool fixture, std::uint64_t seed,
                 const std::string& policy_name, const std::string& executor_name, long trials,
                 const std::string& out_flag) {
  Instance inst;
  if (!load_input(path, fixture, inst)) return kInvalid;
  const Policy policy = parse_policy(policy_name);
  const ExecutorKind executor = parse_executor(executor_name);
  const std::string dir = output_dir(out_flag);
  const std::string config = "simulate input=" + (fixture ? std::string("fixture-siv") : path) +
                             " policy=" + policy_name + " executor=" + executor_name +
                             " trials=" + std::to_string(trials);

  if (trials > 1) {
    const McEstimate est = monte_carlo_eval(inst, policy, executor, trials, seed);
    std::ostringstream csv;
    csv << header(seed, config) << "metric,value\n";
    csv << "mean," << format_real(est.mean) << "\n";
    csv << "stderr," << format_real(est.std_error) << "\n";
    csv << "trials," << est.trials << "\n";
    for (const auto& [task, mean] : est.task_mean)
      csv << "task_mean_" << task << "," << format_real(mean) << "\n";
    write_file(dir, "mc.csv", csv.str());
    std::cout << "mean " << format_real(est.mean) << " stderr " << format_real(est.std_error)
              << " over " << est.trials << " trials\n";
    return kOk;
  }

  Schedule schedule;
  switch (policy) {
    case Policy::npscs:
      schedule = build_schedule(inst, solve_relaxation(inst), derive_seed(seed, 0, 0));
      break;
    case Policy::fifo: schedule = schedule_fifo(inst); break;
    case Policy::wsept: schedule = schedule_wsept(inst); break;
  }
  const Realization real = realize_sizes(inst, derive_seed(seed, 0, 1));
  const SimResult result =
      executor == ExecutorKind::barrier ? execute_barrier(inst, schedule, real)
                                        : execute_list(inst, schedule, real);
  const auto issues = check_sim_result(inst, real, result);
  if (!issues.empty()) {
    for (const auto& issue : issues) std::cerr << "infeasible execution: " << issue << "\n";
    return kFailure;
  }

  std::ostringstream result_csv;
  result_csv << header(seed, config) << "# objective=" << format_real(result.objective)
             << "\ntask,weight,completion\n";
  for (const auto& task : inst.tasks)
    result_csv << task.id << "," << format_real(task.weight) << "," << result.c_task.at(task.id)
               << "\n";
  write_file(dir, "result.csv", result_csv.str());

  std::ostringstream trace_csv;
  trace_csv << header(seed, config) << "source,sink,task,start,end\n";
  for (const auto& [key, interval] : result.intervals)
    trace_csv << key_csv(key) << "," << interval.start << "," << interval.end << "\n";
  write_file(dir, "trace.csv", trace_csv.str());

  std::cout << "objective " << format_real(result.objective) << " makespan " << result.makespan
            << "\n";
  return kOk;
}

int cmd_bench(const std::string& config_path, const std::string& out_flag) {
  const BenchConfig cfg = load_bench_config(config_path);
  const std::string dir = output_dir(out_flag);
  const BenchOutput out = run_bench(cfg);
  write_file(dir, "ratio_report.csv", out.csv);
  write_file(dir, "summary.txt",
             header(cfg.master_seed, canonical_config_line(cfg)) + out.summary);
  std::cout << out.summary;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"co-flow scheduling toolkit"};
  app.set_version_flag("--version", std::string("coflow ") + kVersion);
  app.require_subcommand(1);

  std::string path;
  std::string out_flag;
  std::string policy_name = "npscs";
  std::string executor_name = "barrier";
  std::string config_path;
  std::uint64_t seed = 0;
  int horizon_override = 0;
  int force_slot = -1;
  long trials = 1;
  bool fixture = false;
  bool export_lp = false;

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("file", path)->required();

  auto* solve = app.add_subcommand("solve", "solve the start-time relaxation");
  auto* solve_file = solve->add_option("file", path);
  solve->add_flag("--fixture-siv", fixture, "use the built-in 19-flow demo instance");
  solve->add_option("--horizon", horizon_override, "override the planning horizon");
  solve->add_flag("--export-lp", export_lp, "also write the model in LP format");
  solve->add_option("-o,--out", out_flag, "output directory");

  auto* schedule = app.add_subcommand("schedule", "sample a schedule from the relaxation");
  auto* schedule_file = schedule->add_option("file", path);
  schedule->add_flag("--fixture-siv", fixture, "use the built-in 19-flow demo instance");
  schedule->add_option("--seed", seed)->required();
  schedule->add_option("--force-slot", force_slot,
                       "skip sampling; place every tentative start at this slot");
  schedule->add_option("-o,--out", out_flag, "output directory");

  auto* simulate = app.add_subcommand("simulate", "execute a policy on sampled sizes");
  auto* simulate_file = simulate->add_option("file", path);
  simulate->add_flag("--fixture-siv", fixture, "use the built-in 19-flow demo instance");
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--policy", policy_name, "npscs | fifo | wsept");
  simulate->add_option("--executor", executor_name, "barrier | list");
  simulate->add_option("--trials", trials, "Monte-Carlo trials (1 = single traced run)");
  simulate->add_option("-o,--out", out_flag, "output directory");

  auto* bench = app.add_subcommand("bench", "run the benchmark harness");
  bench->add_option("--config", config_path)->required();
  bench->add_option("-o,--out", out_flag, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (solve->parsed()) {
      if (fixture == !!solve_file->count()) {
        std::cerr << "need exactly one of: instance file, --fixture-siv\n";
        return kInvalid;
      }
      return cmd_solve(path, fixture, horizon_override, export_lp, out_flag);
    }
    if (schedule->parsed()) {
      if (fixture == !!schedule_file->count()) {
        std::cerr << "need exactly one of: instance file, --fixture-siv\n";
        return kInvalid;
      }
      return cmd_schedule(path, fixture, seed, force_slot, out_flag);
    }
    if (simulate->parsed()) {
      if (fixture == !!simulate_file->count()) {
        std::cerr << "need exactly one of: instance file, --fixture-siv\n";
        return kInvalid;
      }
      return cmd_simulate(path, fixture, seed, policy_name, executor_name, trials, out_flag);
    }
    if (bench->parsed()) return cmd_bench(config_path, out_flag);
  } catch (const SolveError& e) {
    std::cerr << "solver: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kInvalid;
}
