#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <crowdalloc/ct_model.hpp>
#include <crowdalloc/policies.hpp>

namespace CLI {
class App;
}

namespace crowdalloc::cli {

inline constexpr const char* kOutDirEnv = "CROWDALLOC_OUT_DIR";

struct RunConfig {
  std::string command;
  std::optional<int> tasks;
  std::optional<int> budget;  // default ceil(1.2 K)
  double arrival_rate = 0.1;
  double service_rate = 0.4;
  double threshold = 0.5;
  std::string prior = "1,1";  // a,b or a,b;a,b;... one per task
  std::optional<int> cap;
  int reps = 5000;
  std::uint64_t seed = 1;
  std::string policy = "index,okg,thompson,ucb_tuned,round_robin";
  std::string out;
  std::string detail;
  std::string dataset;
  int holdout = 50;
  double tol = 1e-4;
  std::optional<double> horizon;
  int threads = 0;
};

// Registers every flag on `app` as a global option; subcommands fall
// through so flags may follow the subcommand name. `--config FILE` reads
// key=value lines with the long flag names; command-line flags win.
void register_options(CLI::App& app, RunConfig& config);

int default_budget(int num_tasks);
std::vector<TaskPrior> parse_priors(const std::string& text, int num_tasks);

// Instance for K tasks from the shared flags, with `priors` already
// resolved (one per task).
Instance make_instance(const RunConfig& config, int num_tasks, std::vector<TaskPrior> priors);

// Checks ranges and combinations that do not depend on the subcommand.
void validate(const RunConfig& config);

// `path`, or `fallback` when empty; relative paths go under $CROWDALLOC_OUT_DIR
// when it is set. Parent directories are created.
std::filesystem::path resolve_output(const std::string& path, const std::string& fallback);

}  // namespace crowdalloc::cli
