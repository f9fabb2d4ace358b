#include "cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include <crowdalloc/bound.hpp>
#include <crowdalloc/data_io.hpp>
#include <crowdalloc/errors.hpp>
#include <crowdalloc/oracle.hpp>
#include <crowdalloc/simulator.hpp>

namespace crowdalloc::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : path_(path), file_(path, std::ios::binary) {
    if (!file_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) file_ << (i ? "," : "") << fields[i];
    file_ << '\n';
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream file_;
};

std::string prior_text(const Instance& inst) {
  const bool same = std::all_of(inst.priors.begin(), inst.priors.end(),
                                [&](const TaskPrior& p) { return p == inst.priors.front(); });
  if (!same) return "per-task";
  return "Beta(" + num(inst.priors.front().alpha) + "," + num(inst.priors.front().beta) + ")";
}

void describe(std::ostream& out, const Instance& inst, const RunConfig& c) {
  out << "instance K=" << inst.num_tasks << " U=" << inst.budget << " r=" << inst.arrival_rate
      << " mu=" << inst.completion_rate << " d=" << c.threshold << " prior=" << prior_text(inst)
      << " cap=" << inst.worker_cap << " T=" << (inst.infinite_horizon() ? "inf" : num(inst.horizon))
      << " seed=" << inst.master_seed << '\n';
}

std::vector<PolicyKind> policies_of(const RunConfig& c) {
  auto kinds = parse_policy_list(c.policy);
  if (kinds.empty()) throw ParameterError("--policy needs at least one name");
  return kinds;
}

int tasks_or_default(const RunConfig& c) { return c.tasks.value_or(10); }

const std::vector<std::string> kSummaryHeader = {
    "policy", "K", "U", "n", "mean", "ci_lo", "ci_hi", "per_task_mean", "per_task_gap",
    "accuracy_mean", "accuracy_lo", "accuracy_hi"};

const std::vector<std::string> kDetailHeader = {
    "replication", "policy", "K", "U", "reward", "accuracy", "skipped", "max_task_load"};

void write_detail(CsvWriter& csv, const Instance& inst, const ReplicationReport& rep) {
  const std::string name(to_string(rep.policy));
  for (std::size_t i = 0; i < rep.episodes.size(); ++i) {
    const auto& e = rep.episodes[i];
    csv.row({std::to_string(i), name, std::to_string(inst.num_tasks), std::to_string(inst.budget),
             num(e.terminal_reward), e.accuracy ? num(*e.accuracy) : "", std::to_string(e.skipped),
             std::to_string(e.max_task_load)});
  }
}

std::vector<ReplicationReport> run_all(const RunConfig& c, const Instance& inst,
                                       const LabelSource& source) {
  std::vector<ReplicationReport> reports;
  for (PolicyKind kind : policies_of(c))
    reports.push_back(run_replications(inst, kind, source, c.reps, c.threads));
  return reports;
}

void print_cap_notes(std::ostream& out, const Instance& inst, const ReplicationReport& rep) {
  if (rep.episodes_cap_binding > 0)
    out << "  cap warning: " << to_string(rep.policy) << " hit cap " << inst.worker_cap << " in "
        << rep.episodes_cap_binding << " of " << rep.reward.n << " episodes\n";
}

}  // namespace

int cmd_bound(const RunConfig& c, std::ostream& out) {
  const int k = tasks_or_default(c);
  const Instance inst = make_instance(c, k, parse_priors(c.prior, k));
  if (!inst.infinite_horizon())
    throw UnsupportedError("bound: the upper bound is only available for an infinite horizon");
  describe(out, inst, c);
  const BoundResult res = upper_bound(inst, c.tol);

  CsvWriter csv(resolve_output(c.out, "bound.csv"));
  csv.row({"lambda", "bound"});
  out << "probes:\n";
  for (const auto& p : res.evaluations) {
    csv.row({num(p.lambda), num(p.value)});
    out << "  lambda " << fixed(p.lambda, 8) << "  B " << fixed(p.value, 8) << '\n';
  }
  out << "lambda* " << fixed(res.lambda_star, 8) << "  bound " << fixed(res.bound_value, 8)
      << "  bound/K " << fixed(res.bound_value / k, 8) << "  bracket " << num(res.bracket_width)
      << '\n';

  double base = 0.0;
  for (int x = 0; x < k; ++x) base += task_reward(inst.prior_belief(x));
  const bool ok = res.bound_value >= base - 1e-12 && res.bound_value <= k + 1e-12 &&
                  res.bracket_width <= c.tol;
  out << "csv " << csv.path().string() << '\n' << "sanity " << (ok ? "ok" : "FAILED") << '\n';
  return ok ? kExitOk : kExitSanity;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  const int k = tasks_or_default(c);
  const Instance inst = make_instance(c, k, parse_priors(c.prior, k));
  describe(out, inst, c);
  std::optional<BoundResult> bound;
  if (inst.infinite_horizon()) {
    bound = upper_bound(inst, c.tol);
    out << "bound " << fixed(bound->bound_value, 6) << "  per task " << fixed(bound->bound_value / k)
        << "  lambda* " << fixed(bound->lambda_star, 6) << '\n';
  } else {
    out << "finite horizon: bound comparison disabled\n";
  }

  const auto reports = run_all(c, inst, LabelSource::synthetic());

  CsvWriter summary(resolve_output(c.out, "compare.csv"));
  summary.row(kSummaryHeader);
  bool ok = true;
  char line[200];
  std::snprintf(line, sizeof line, "%-12s %12s %12s %12s %10s %10s\n", "policy", "mean", "ci_lo",
                "ci_hi", "per_task", "gap/task");
  out << line;
  for (const auto& rep : reports) {
    const auto& s = rep.reward;
    std::string gap_field;
    double gap = 0.0;
    if (bound) {
      const GapReport g = optimality_gap(s.mean, s.halfwidth(), bound->bound_value, k);
      gap = g.per_task_gap;
      gap_field = num(gap);
      const bool lower_ok = s.ci_lo <= bound->bound_value;
      const bool upper_ok = s.ci_hi <= bound->bound_value + 4.0 * s.standard_error();
      if (!lower_ok || !upper_ok) {
        ok = false;
        out << "  VIOLATION: " << to_string(rep.policy) << " interval exceeds the bound\n";
      }
    }
    const std::string name(to_string(rep.policy));
    std::snprintf(line, sizeof line, "%-12s %12.6f %12.6f %12.6f %10.6f %10s\n", name.c_str(), s.mean,
                  s.ci_lo, s.ci_hi, s.per_task_mean, bound ? fixed(gap).c_str() : "-");
    out << line;
    summary.row({name, std::to_string(k), std::to_string(inst.budget), std::to_string(s.n), num(s.mean),
                 num(s.ci_lo), num(s.ci_hi), num(s.per_task_mean), gap_field, "", "", ""});
    print_cap_notes(out, inst, rep);
  }
  if (bound)
    summary.row({"bound", std::to_string(k), std::to_string(inst.budget), "", num(bound->bound_value),
                 num(bound->bound_value), num(bound->bound_value), num(bound->bound_value / k), "0",
                 "", "", ""});
  out << "csv " << summary.path().string() << '\n';
  if (!c.detail.empty()) {
    CsvWriter detail(resolve_output(c.detail, "compare_detail.csv"));
    detail.row(kDetailHeader);
    for (const auto& rep : reports) write_detail(detail, inst, rep);
    out << "detail " << detail.path().string() << '\n';
  }
  out << "sanity " << (ok ? "ok" : "FAILED") << '\n';
  return ok ? kExitOk : kExitSanity;
}

int cmd_replay(const RunConfig& c, std::ostream& out) {
  if (c.dataset.empty()) throw ParameterError("replay: --dataset is required");
  const LabeledDataset data = load_dataset(c.dataset);
  const auto holdout = static_cast<std::size_t>(c.holdout);
  if (holdout >= data.size() && holdout > 0)
    throw ParameterError("replay: holdout of " + std::to_string(holdout) + " leaves no tasks out of " +
                         std::to_string(data.size()));
  auto [held, rest] = split_holdout(data, holdout, c.seed);
  const PriorFit fit = fit_prior_mom(held);
  const int k = c.tasks.value_or(static_cast<int>(rest.size()));
  if (static_cast<std::size_t>(k) + holdout > data.size())
    throw ParameterError("replay: dataset has " + std::to_string(data.size()) + " tasks, fewer than K + holdout = " +
                         std::to_string(k + holdout));

  out << "dataset " << c.dataset << " tasks=" << data.size() << " holdout=" << held.size() << '\n';
  out << "prior fit alpha0=" << fixed(fit.alpha0, 8) << " beta0=" << fixed(fit.beta0, 8)
      << " (mean " << fixed(fit.mean) << ", variance " << fixed(fit.variance) << ")"
      << (fit.fallback ? " fallback: moments admit no Beta, using (1,1)" : "") << '\n';

  const Instance inst = make_instance(c, k, std::vector<TaskPrior>(k, TaskPrior{fit.alpha0, fit.beta0}));
  describe(out, inst, c);
  const LabelSource source = LabelSource::replay(replay_tasks(rest, static_cast<std::size_t>(k)));
  const auto reports = run_all(c, inst, source);

  CsvWriter summary(resolve_output(c.out, "replay.csv"));
  summary.row(kSummaryHeader);
  bool ok = true;
  char line[200];
  std::snprintf(line, sizeof line, "%-12s %10s %10s %10s %12s %10s\n", "policy", "accuracy", "acc_lo",
                "acc_hi", "reward/task", "fallbacks");
  out << line;
  for (const auto& rep : reports) {
    const auto& a = *rep.accuracy;
    const auto& s = rep.reward;
    for (const auto& e : rep.episodes)
      if (!e.accuracy || *e.accuracy < 0.0 || *e.accuracy > 1.0) ok = false;
    const std::string name(to_string(rep.policy));
    std::snprintf(line, sizeof line, "%-12s %10.6f %10.6f %10.6f %12.6f %10ld\n", name.c_str(), a.mean,
                  a.ci_lo, a.ci_hi, s.per_task_mean, rep.replay_fallbacks);
    out << line;
    summary.row({name, std::to_string(k), std::to_string(inst.budget), std::to_string(s.n), num(s.mean),
                 num(s.ci_lo), num(s.ci_hi), num(s.per_task_mean), "", num(a.mean), num(a.ci_lo),
                 num(a.ci_hi)});
    print_cap_notes(out, inst, rep);
  }
  out << "csv " << summary.path().string() << '\n';
  if (!c.detail.empty()) {
    CsvWriter detail(resolve_output(c.detail, "replay_detail.csv"));
    detail.row(kDetailHeader);
    for (const auto& rep : reports) write_detail(detail, inst, rep);
    out << "detail " << detail.path().string() << '\n';
  }
  out << "sanity " << (ok ? "ok" : "FAILED") << '\n';
  return ok ? kExitOk : kExitSanity;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const int k = tasks_or_default(c);
  const Instance inst = make_instance(c, k, parse_priors(c.prior, k));
  if (!inst.infinite_horizon())
    throw UnsupportedError("oracle: the exact DP is only available for an infinite horizon");
  describe(out, inst, c);
  out << "estimated joint states " << num(estimate_joint_states(inst)) << '\n';
  const double optimal = exact_optimal_value(inst);
  const double index = exact_policy_value(inst, PolicyKind::index);
  const BoundResult bound = upper_bound(inst, c.tol);
  const bool lower = index <= optimal + 1e-9;
  const bool upper = optimal <= bound.bound_value + 1e-9;

  out << "exact optimal " << fixed(optimal, 10) << '\n'
      << "exact index   " << fixed(index, 10) << '\n'
      << "upper bound   " << fixed(bound.bound_value, 10) << '\n'
      << "index <= optimal: " << (lower ? "pass" : "FAIL") << '\n'
      << "optimal <= bound: " << (upper ? "pass" : "FAIL") << '\n';

  CsvWriter csv(resolve_output(c.out, "oracle.csv"));
  csv.row({"quantity", "value"});
  csv.row({"exact_optimal", num(optimal)});
  csv.row({"exact_index", num(index)});
  csv.row({"upper_bound", num(bound.bound_value)});
  out << "csv " << csv.path().string() << '\n';
  return lower && upper ? kExitOk : kExitSanity;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budgeted crowd-labeling allocation: bounds, policies, simulation", "crowdalloc"};
  RunConfig config;
  register_options(app, config);
  app.require_subcommand(1);
  for (const char* name : {"bound", "compare", "replay", "oracle"}) app.add_subcommand(name)->fallthrough();
  app.get_subcommand("bound")->description("Lagrangian upper bound by Fibonacci search over lambda");
  app.get_subcommand("compare")->description("simulate policies on synthetic labels against the bound");
  app.get_subcommand("replay")->description("replay a labeled dataset with a fitted prior");
  app.get_subcommand("oracle")->description("exact DP sandwich check on a tiny instance");

  const std::string usage = app.help();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << usage;
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << usage;
    return kExitUsage;
  }

  try {
    validate(config);
    if (app.got_subcommand("bound")) return cmd_bound(config, out);
    if (app.got_subcommand("compare")) return cmd_compare(config, out);
    if (app.got_subcommand("replay")) return cmd_replay(config, out);
    return cmd_oracle(config, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n\n" << usage;
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << config.dataset << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const DiagnosticError& e) {
    err << "diagnostic: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace crowdalloc::cli
