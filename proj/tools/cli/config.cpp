#include "cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include <crowdalloc/errors.hpp>

namespace crowdalloc::cli {

void register_options(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "key=value file using the long flag names; flags win");
  app.add_option("--tasks", c.tasks, "number of tasks K");
  app.add_option("--budget", c.budget, "worker budget U (default ceil(1.2 K))");
  app.add_option("--arrival-rate", c.arrival_rate, "worker arrival rate r")->capture_default_str();
  app.add_option("--service-rate", c.service_rate, "task completion rate mu")->capture_default_str();
  app.add_option("--threshold", c.threshold, "classification threshold d")->capture_default_str();
  app.add_option("--prior", c.prior, "Beta prior a,b (or a,b;a,b;... per task)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join)
      ->capture_default_str();
  app.add_option("--cap", c.cap, "max workers per task (default min(U, 15))");
  app.add_option("--reps", c.reps, "replications")->capture_default_str();
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--policy", c.policy, "policy list: index,okg,thompson,ucb_tuned,round_robin")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join)
      ->capture_default_str();
  app.add_option("--out", c.out, "summary / probe CSV path");
  app.add_option("--detail", c.detail, "per-replication CSV path (compare, replay)");
  app.add_option("--dataset", c.dataset, "dataset CSV (replay)");
  app.add_option("--holdout", c.holdout, "tasks held out for the prior fit (replay)")
      ->capture_default_str();
  app.add_option("--tol", c.tol, "lambda bracket tolerance (bound)")->capture_default_str();
  app.add_option("--horizon", c.horizon, "time horizon T (default infinite)");
  app.add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
}

int default_budget(int num_tasks) {
  return static_cast<int>(std::ceil(1.2 * num_tasks - 1e-9));
}

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParameterError("not a number: '" + s + "'");
  return v;
}

}  // namespace

std::vector<TaskPrior> parse_priors(const std::string& text, int num_tasks) {
  std::vector<TaskPrior> priors;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ParameterError("--prior expects a,b; got '" + item + "'");
    TaskPrior p{parse_number(item.substr(0, comma)), parse_number(item.substr(comma + 1))};
    if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw ParameterError("--prior parameters must be positive");
    priors.push_back(p);
  }
  if (priors.size() == 1) priors.assign(num_tasks, priors.front());
  if (std::ssize(priors) != num_tasks)
    throw ParameterError("--prior needs 1 or K entries, got " + std::to_string(priors.size()));
  return priors;
}

Instance make_instance(const RunConfig& c, int k, std::vector<TaskPrior> priors) {
  Instance inst;
  inst.num_tasks = k;
  inst.budget = c.budget ? *c.budget : default_budget(k);
  inst.horizon = c.horizon ? *c.horizon : kInfiniteHorizon;
  inst.arrival_rate = c.arrival_rate;
  inst.completion_rate = c.service_rate;
  inst.priors = std::move(priors);
  inst.thresholds.assign(k, c.threshold);
  inst.worker_cap = c.cap ? *c.cap : default_worker_cap(inst.budget);
  inst.master_seed = c.seed;
  validate(inst);
  return inst;
}

void validate(const RunConfig& c) {
  if (c.tasks && *c.tasks < 1) throw ParameterError("--tasks must be >= 1");
  if (c.budget && *c.budget < 0) throw ParameterError("--budget must be >= 0");
  if (c.cap && *c.cap < 1) throw ParameterError("--cap must be >= 1");
  if (c.cap && c.budget && *c.budget >= 1 && *c.cap > *c.budget)
    throw ParameterError("--cap cannot exceed --budget");
  if (c.reps < 2) throw ParameterError("--reps must be >= 2");
  if (c.holdout < 0) throw ParameterError("--holdout must be >= 0");
  if (!(c.tol > 0.0)) throw ParameterError("--tol must be positive");
  if (c.horizon && !(*c.horizon > 0.0)) throw ParameterError("--horizon must be positive");
  if (c.threads < 0) throw ParameterError("--threads must be >= 0");
}

std::filesystem::path resolve_output(const std::string& path, const std::string& fallback) {
  std::filesystem::path p = path.empty() ? fallback : path;
  if (p.is_relative())
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

}  // namespace crowdalloc::cli
