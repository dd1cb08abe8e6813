#include "mxplex/restarts.hpp"

#include "mxplex/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mxplex {

Selector parse_selector(const std::string& name) {
  if (name == "nmi") return Selector::kNmi;
  if (name == "qd") return Selector::kModularityDensity;
  throw std::invalid_argument("unknown selector '" + name + "'");
}

const char* selector_name(Selector s) { return s == Selector::kNmi ? "nmi" : "qd"; }

namespace {

struct Candidate {
  std::size_t index = 0;
  double score = 0.0;
  RunResult run;
  CommonPresence presence;
  LabeledPartition labels;
  bool filled = false;

  bool beats(const Candidate& other) const {
    if (!other.filled) return true;
    if (score != other.score) return score > other.score;
    return index < other.index;
  }
};

}  // namespace

RestartOutcome run_restarts(const MultiplexNetwork& net, const ModelOrder& order,
                            std::uint64_t master_seed, const RestartOptions& options,
                            const std::vector<NodeLabels>* truth) {
  if (options.restarts == 0) throw std::invalid_argument("run_restarts: restarts must be positive");
  order.validate(net.layer_count());
  const Selector selector =
      options.selector.value_or(truth ? Selector::kNmi : Selector::kModularityDensity);
  if (selector == Selector::kNmi && !truth) {
    throw std::invalid_argument("run_restarts: the nmi selector needs reference labels");
  }

  std::vector<double> scores(options.restarts, 0.0);
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  Candidate overall;
  std::exception_ptr failure;
  std::size_t failure_index = options.restarts;

  auto worker = [&] {
    Candidate local;
    for (std::size_t r = next++; r < options.restarts; r = next++) {
      try {
        RandomStream stream(master_seed, r);
        Candidate c;
        c.index = r;
        c.run = run_once(net, order, stream, options.run);
        c.presence = common_presence(net, c.run.factors, order, options.presence);
        c.labels = final_labels(c.run.factors, c.presence, order);
        c.score = selector == Selector::kNmi
                      ? multiplex_nmi(c.labels.layers, *truth, options.pooled_nmi)
                      : multiplex_modularity_density(net, c.labels.layers);
        c.filled = true;
        scores[r] = c.score;
        if (c.beats(local)) local = std::move(c);
      } catch (...) {
        std::lock_guard lock(guard);
        if (r < failure_index) {
          failure_index = r;
          failure = std::current_exception();
        }
      }
    }
    std::lock_guard lock(guard);
    if (local.filled && local.beats(overall)) overall = std::move(local);
  };

  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, options.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  RestartOutcome out;
  out.best = std::move(overall.run);
  out.presence = std::move(overall.presence);
  out.labels = std::move(overall.labels);
  out.selector = selector;
  out.best_index = overall.index;
  out.scores = std::move(scores);
  return out;
}

}  // namespace mxplex
