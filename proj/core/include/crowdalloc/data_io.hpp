#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "crowdalloc/belief.hpp"
#include "crowdalloc/simulator.hpp"

namespace crowdalloc {

struct LabeledTask {
  std::string task_id;
  std::vector<Label> labels;  // elicitation order
  Label gold = Label::negative;

  double positive_fraction() const;
  friend bool operator==(const LabeledTask&, const LabeledTask&) = default;
};

struct LabeledDataset {
  std::vector<LabeledTask> tasks;
  std::size_t size() const noexcept { return tasks.size(); }
  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

// Canonical CSV:
//   task_id,gold,labels
//   rte_17,1,1101101110
// `labels` holds '0'/'1' characters in elicitation order. Errors carry the
// 1-based line number.
LabeledDataset parse_dataset(std::istream& in);
LabeledDataset load_dataset(const std::filesystem::path& path);

// Canonical text; parse_dataset(serialize_dataset(d)) == d and canonical
// files round-trip byte for byte.
std::string serialize_dataset(const LabeledDataset& dataset);
void save_dataset(const LabeledDataset& dataset, const std::filesystem::path& path);

// Seeded split into (holdout, remainder); both keep file order.
std::pair<LabeledDataset, LabeledDataset> split_holdout(const LabeledDataset& dataset,
                                                        std::size_t holdout_size,
                                                        std::uint64_t seed);

struct PriorFit {
  double alpha0 = 1.0;
  double beta0 = 1.0;
  double mean = 0.0;      // of the per-task positive fractions
  double variance = 0.0;  // population variance of the same
  bool fallback = false;  // moments admit no Beta; (1, 1) returned
};

// Method-of-moments Beta fit to the per-task positive-label fractions.
PriorFit fit_prior_mom(const LabeledDataset& holdout);

// Replay label lists for the first `count` tasks of the dataset.
std::vector<ReplayTask> replay_tasks(const LabeledDataset& dataset, std::size_t count);

}  // namespace crowdalloc
