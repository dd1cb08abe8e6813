#pragma once

// Multi-start driver: independent seeded runs, each labelled and scored,
// keeping the best.

#include "mxplex/assign.hpp"
#include "mxplex/factorize.hpp"
#include "mxplex/multiplex.hpp"
#include "mxplex/order.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mxplex {

enum class Selector { kNmi, kModularityDensity };

Selector parse_selector(const std::string& name);
const char* selector_name(Selector s);

struct RestartOptions {
  std::size_t restarts = 50;
  /// Worker count; 0 uses the hardware concurrency. Results do not depend
  /// on it.
  std::size_t threads = 0;
  RunOptions run;
  PresenceRule presence = PresenceRule::kCorrected;
  /// Score NMI on concatenated layers rather than per layer.
  bool pooled_nmi = false;
  /// Defaults to NMI when a reference is given, modularity density
  /// otherwise.
  std::optional<Selector> selector;
};

struct RestartOutcome {
  RunResult best;
  CommonPresence presence;
  LabeledPartition labels;
  Selector selector = Selector::kModularityDensity;
  std::size_t best_index = 0;
  /// Selector value of every restart, by restart index.
  std::vector<double> scores;
};

/// Restart r draws from RandomStream(master_seed, r). The winner maximizes
/// the selector; equal scores go to the lowest index.
RestartOutcome run_restarts(const MultiplexNetwork& net, const ModelOrder& order,
                            std::uint64_t master_seed, const RestartOptions& options = {},
                            const std::vector<NodeLabels>* truth = nullptr);

}  // namespace mxplex
