#include "coflow/report.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coflow/instance_io.hpp"
#include "coflow/lp_solution.hpp"
#include "coflow/rng.hpp"
#include "coflow/version.hpp"
#include "json.hpp"

namespace coflow {

std::string to_string(DistFamily family) {
  switch (family) {
    case DistFamily::deterministic: return "deterministic";
    case DistFamily::two_point: return "two_point";
    case DistFamily::truncated_geometric: return "truncated_geometric";
  }
  return "?";
}

std::string to_string(ReleaseMode mode) {
  return mode == ReleaseMode::zero ? "zero" : "uniform";
}

namespace {

DistFamily parse_family(const std::string& name) {
  if (name == "deterministic") return DistFamily::deterministic;
  if (name == "two_point") return DistFamily::two_point;
  if (name == "truncated_geometric") return DistFamily::truncated_geometric;
  throw std::invalid_argument("unknown dist family: " + name);
}

ReleaseMode parse_release_mode(const std::string& name) {
  if (name == "zero") return ReleaseMode::zero;
  if (name == "uniform") return ReleaseMode::uniform;
  throw std::invalid_argument("unknown release mode: " + name);
}

}  // namespace

BenchConfig parse_bench_config(const std::string& text) {
  nlohmann::json root = nlohmann::json::parse(text);
  BenchConfig cfg;
  if (root.contains("name")) cfg.name = root["name"].get<std::string>();
  if (root.contains("master_seed")) cfg.master_seed = root["master_seed"].get<std::uint64_t>();
  if (root.contains("trials")) cfg.trials = root["trials"].get<long>();
  if (root.contains("instances")) cfg.instances = root["instances"].get<int>();
  if (root.contains("policies")) {
    cfg.policies.clear();
    for (const auto& p : root["policies"]) cfg.policies.push_back(parse_policy(p.get<std::string>()));
  }
  if (root.contains("executor")) cfg.executor = parse_executor(root["executor"].get<std::string>());
  if (root.contains("generator")) {
    const auto& g = root["generator"];
    if (g.contains("servers")) {
      cfg.servers.clear();
      if (g["servers"].is_array())
        for (const auto& m : g["servers"]) cfg.servers.push_back(m.get<int>());
      else
        cfg.servers.push_back(g["servers"].get<int>());
    }
    if (g.contains("tasks")) cfg.generator.tasks = g["tasks"].get<int>();
    if (g.contains("density")) cfg.generator.density = g["density"].get<double>();
    if (g.contains("family")) cfg.generator.family = parse_family(g["family"].get<std::string>());
    if (g.contains("size_cap")) cfg.generator.size_cap = g["size_cap"].get<int>();
    if (g.contains("weight_lo")) cfg.generator.weight_lo = g["weight_lo"].get<double>();
    if (g.contains("weight_hi")) cfg.generator.weight_hi = g["weight_hi"].get<double>();
    if (g.contains("release_mode"))
      cfg.generator.release_mode = parse_release_mode(g["release_mode"].get<std::string>());
    if (g.contains("release_bound")) cfg.generator.release_bound = g["release_bound"].get<int>();
  }
  if (cfg.trials < 1) throw std::invalid_argument("bench config: trials must be >= 1");
  if (cfg.instances < 1) throw std::invalid_argument("bench config: instances must be >= 1");
  if (cfg.servers.empty()) throw std::invalid_argument("bench config: servers list is empty");
  if (cfg.policies.empty()) throw std::invalid_argument("bench config: policies list is empty");
  return cfg;
}

BenchConfig load_bench_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bench_config(buf.str());
}

std::string canonical_config_line(const BenchConfig& cfg) {
  std::ostringstream out;
  out << "name=" << cfg.name << " master_seed=" << cfg.master_seed << " trials=" << cfg.trials
      << " instances=" << cfg.instances << " policies=";
  for (std::size_t i = 0; i < cfg.policies.size(); ++i)
    out << (i ? "," : "") << to_string(cfg.policies[i]);
  out << " executor=" << to_string(cfg.executor) << " servers=";
  for (std::size_t i = 0; i < cfg.servers.size(); ++i) out << (i ? "," : "") << cfg.servers[i];
  const GeneratorConfig& g = cfg.generator;
  out << " tasks=" << g.tasks << " density=" << format_real(g.density)
      << " family=" << to_string(g.family) << " size_cap=" << g.size_cap
      << " weight_lo=" << format_real(g.weight_lo) << " weight_hi=" << format_real(g.weight_hi)
      << " release_mode=" << to_string(g.release_mode) << " release_bound=" << g.release_bound;
  return out.str();
}

BenchOutput run_bench(const BenchConfig& cfg) {
  BenchOutput out;
  std::ostringstream csv;
  csv << "# tool=coflow " << kVersion << "\n";
  csv << "# seed=" << cfg.master_seed << "\n";
  csv << "# config=" << canonical_config_line(cfg) << "\n";
  csv << "instance,m,policy,executor,delta,release,trials,lp_bound,mean,stderr,ratio,"
         "bound_log2,bound_ln,bound_applies,exceeds\n";

  for (int m : cfg.servers) {
    for (int index = 0; index < cfg.instances; ++index) {
      GeneratorConfig gen = cfg.generator;
      gen.servers = m;
      const std::uint64_t inst_seed =
          derive_seed(cfg.master_seed, static_cast<std::uint64_t>(m),
                      static_cast<std::uint64_t>(index));
      Instance inst = generate_instance(gen, inst_seed);
      inst.metadata["name"] = "m" + std::to_string(m) + "-i" + std::to_string(index);

      const LpSolution sol = solve_relaxation(inst);
      for (std::size_t pi = 0; pi < cfg.policies.size(); ++pi) {
        const Policy policy = cfg.policies[pi];
        const RatioReport report =
            ratio_report(inst, sol, policy, cfg.executor, cfg.trials,
                         derive_seed(inst_seed, static_cast<std::uint64_t>(pi), 0x5eed));
        out.reports.push_back(report);
        csv << report.instance_id << "," << report.m << "," << to_string(report.policy) << ","
            << to_string(report.executor) << "," << format_real(report.delta) << ","
            << to_string(report.release_class) << "," << report.trials << ","
            << format_real(report.lp_bound) << "," << format_real(report.mean_objective) << ","
            << format_real(report.std_error) << "," << format_real(report.ratio) << ","
            << format_real(report.bound_log2) << "," << format_real(report.bound_ln) << ","
            << (report.bound_applies ? 1 : 0) << "," << (report.exceeds_bound ? 1 : 0) << "\n";
      }
    }
  }
  out.csv = csv.str();

  // Aggregate per (m, policy): mean of per-instance ratios.
  struct Agg {
    double ratio_sum = 0.0;
    double ratio_sq = 0.0;
    double bound = 0.0;
    int count = 0;
    int exceeds = 0;
  };
  std::map<std::pair<int, std::string>, Agg> aggregate;
  for (const RatioReport& report : out.reports) {
    Agg& agg = aggregate[{report.m, to_string(report.policy)}];
    agg.ratio_sum += report.ratio;
    agg.ratio_sq += report.ratio * report.ratio;
    agg.bound = std::max(agg.bound, report.bound_log2);
    agg.count += 1;
    agg.exceeds += report.exceeds_bound ? 1 : 0;
  }
  std::ostringstream summary;
  summary << "bench " << cfg.name << " (seed " << cfg.master_seed << ", " << cfg.trials
          << " trials/instance)\n";
  summary << "m policy mean_ratio sd bound_log2 flagged\n";
  for (const auto& [key, agg] : aggregate) {
    const double mean = agg.ratio_sum / agg.count;
    const double var = std::max(0.0, agg.ratio_sq / agg.count - mean * mean);
    summary << key.first << " " << key.second << " " << format_real(mean) << " "
            << format_real(std::sqrt(var)) << " "
            << (agg.bound > 0.0 ? format_real(agg.bound) : "-") << " " << agg.exceeds << "\n";
  }
  out.summary = summary.str();
  return out;
}

}  // namespace coflow
