#include "crowdalloc/data_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "crowdalloc/errors.hpp"
#include "crowdalloc/rng.hpp"

namespace crowdalloc {

namespace {

constexpr const char* kHeader = "task_id,gold,labels";

Label parse_bit(char c, std::size_t line, const char* what) {
  if (c == '0') return Label::negative;
  if (c == '1') return Label::positive;
  throw ParseError(line, std::string(what) + " must be '0' or '1'");
}

char bit(Label l) { return l == Label::positive ? '1' : '0'; }

}  // namespace

double LabeledTask::positive_fraction() const {
  if (labels.empty()) throw ParameterError("task " + task_id + " has no labels");
  const auto pos = std::count(labels.begin(), labels.end(), Label::positive);
  return static_cast<double>(pos) / static_cast<double>(labels.size());
}

LabeledDataset parse_dataset(std::istream& in) {
  LabeledDataset ds;
  std::set<std::string> seen;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header) {
      if (line != kHeader) throw ParseError(number, std::string("expected header '") + kHeader + "'");
      header = true;
      continue;
    }
    if (line.empty()) throw ParseError(number, "empty row");
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      throw ParseError(number, "expected 3 comma-separated fields");
    LabeledTask task;
    task.task_id = line.substr(0, c1);
    const std::string gold = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string labels = line.substr(c2 + 1);
    if (task.task_id.empty()) throw ParseError(number, "missing task_id");
    if (gold.empty()) throw ParseError(number, "missing gold label");
    if (gold.size() != 1) throw ParseError(number, "gold must be a single '0' or '1'");
    task.gold = parse_bit(gold[0], number, "gold");
    if (labels.empty()) throw ParseError(number, "task has no labels");
    for (char c : labels) task.labels.push_back(parse_bit(c, number, "labels"));
    if (!seen.insert(task.task_id).second)
      throw ParseError(number, "duplicate task_id '" + task.task_id + "'");
    ds.tasks.push_back(std::move(task));
  }
  if (!header) throw ParseError(number + 1, "missing header");
  return ds;
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open dataset " + path.string());
  return parse_dataset(in);
}

std::string serialize_dataset(const LabeledDataset& ds) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& t : ds.tasks) {
    out += t.task_id;
    out += ',';
    out += bit(t.gold);
    out += ',';
    for (Label l : t.labels) out += bit(l);
    out += '\n';
  }
  return out;
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write dataset " + path.string());
  out << serialize_dataset(ds);
}

std::pair<LabeledDataset, LabeledDataset> split_holdout(const LabeledDataset& ds,
                                                        std::size_t holdout_size,
                                                        std::uint64_t seed) {
  if (holdout_size > 0 && holdout_size >= ds.size())
    throw ParameterError("split_holdout: holdout of " + std::to_string(holdout_size) +
                         " leaves no tasks out of " + std::to_string(ds.size()));
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = replication_rng(seed, 0);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[portable_below(rng, i)]);
  std::vector<bool> in_holdout(ds.size(), false);
  for (std::size_t i = 0; i < holdout_size; ++i) in_holdout[order[i]] = true;

  std::pair<LabeledDataset, LabeledDataset> out;
  for (std::size_t i = 0; i < ds.size(); ++i)
    (in_holdout[i] ? out.first : out.second).tasks.push_back(ds.tasks[i]);
  return out;
}

PriorFit fit_prior_mom(const LabeledDataset& holdout) {
  if (holdout.size() < 2) throw ParameterError("fit_prior_mom: need at least 2 holdout tasks");
  std::vector<double> theta;
  theta.reserve(holdout.size());
  for (const auto& t : holdout.tasks) theta.push_back(t.positive_fraction());
  // Sort so the result does not depend on task order.
  std::sort(theta.begin(), theta.end());
  const double n = static_cast<double>(theta.size());
  double sum = 0.0;
  for (double v : theta) sum += v;
  const double m = sum / n;
  double ss = 0.0;
  for (double v : theta) ss += (v - m) * (v - m);
  const double var = ss / n;

  PriorFit fit;
  fit.mean = m;
  fit.variance = var;
  const double spread = m * (1.0 - m);
  if (var <= 0.0 || var >= spread) {
    fit.fallback = true;
    return fit;
  }
  const double factor = spread / var - 1.0;
  fit.alpha0 = m * factor;
  fit.beta0 = (1.0 - m) * factor;
  return fit;
}

std::vector<ReplayTask> replay_tasks(const LabeledDataset& ds, std::size_t count) {
  if (count > ds.size())
    throw ParameterError("replay_tasks: dataset has only " + std::to_string(ds.size()) + " tasks");
  std::vector<ReplayTask> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(ReplayTask{ds.tasks[i].labels, ds.tasks[i].gold});
  return out;
}

}  // namespace crowdalloc
