#pragma once

// Subcommand implementations behind the mxplex tool. Argument parsing lives
// in the tool; these take a filled RunConfig and return a process exit
// code.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mxplex {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

const char* version();

struct RunConfig {
  std::string subcommand;
  std::filesystem::path input;
  std::filesystem::path output;
  std::vector<std::filesystem::path> truth;      // reference labels, one per layer or one shared
  std::vector<std::filesystem::path> labels;     // eval: labels under test
  std::optional<std::size_t> n_hint;
  bool normalize_max = false;

  std::uint64_t seed = 1;
  std::size_t threads = 0;

  // factorization
  std::size_t restarts = 50;
  std::size_t max_iters = 1000;
  double tol = 1e-6;
  std::size_t window = 10;
  double offdiag_scale = 0.1;
  std::optional<std::size_t> common;             // k_c; with private_counts skips estimation
  std::vector<std::size_t> private_counts;
  std::vector<std::size_t> per_layer;            // optional k_l
  std::string selector;                          // "", nmi or qd
  bool pooled = false;
  bool legacy_qj = false;

  // model order
  std::string cut_rule = "prose";
  std::string linkage = "single";
  std::size_t null_trials = 50;
  std::size_t embed_fits = 5;
  bool raw_rows = false;

  // generate / sweep
  std::size_t n = 256;
  std::size_t layers = 3;
  std::size_t bench_common = 2;
  std::vector<std::size_t> bench_private{2};
  std::vector<std::string> presence;             // one "1101" string per common community
  std::optional<std::size_t> common_nodes;
  double mu = 0.1;
  double p1 = 1.0;
  double avg_degree = 16.0;

  // baseline
  std::optional<std::size_t> k;
  std::size_t fits = 5;

  // sweep
  std::string axis = "mu";
  std::vector<double> values;
  std::size_t realizations = 10;
  std::string order_source = "truth";            // truth or estimate
  bool with_baseline = false;
  std::filesystem::path plot;
};

/// MXPLEX_SEED when set, else the built-in default.
std::uint64_t default_seed();

int cmd_generate(const RunConfig& cfg, std::ostream& out);
int cmd_estimate_k(const RunConfig& cfg, std::ostream& out);
int cmd_detect(const RunConfig& cfg, std::ostream& out);
int cmd_baseline(const RunConfig& cfg, std::ostream& out);
int cmd_eval(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

/// Dispatch on cfg.subcommand, mapping exceptions to exit codes with a
/// message on stderr.
int run_command(const RunConfig& cfg, std::ostream& out);

}  // namespace mxplex
