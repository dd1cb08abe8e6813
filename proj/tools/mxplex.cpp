// mxplex: common and private community detection in multiplex networks.

#include "mxplex/cli.hpp"
#include "mxplex/log.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

void add_factorization_flags(CLI::App* app, mxplex::RunConfig& c) {
  app->add_option("--restarts", c.restarts, "independent initializations")->check(CLI::PositiveNumber);
  app->add_option("--max-iters", c.max_iters, "iteration cap per run");
  app->add_option("--tol", c.tol, "relative objective change treated as converged");
  app->add_option("--window", c.window, "consecutive converged iterations required");
  app->add_option("--offdiag-scale", c.offdiag_scale,
                  "scale of off-diagonal affinity entries at initialization (1 = uniform)");
  app->add_flag("--legacy-qj", c.legacy_qj, "literal presence score and column count");
  app->add_flag("--pooled", c.pooled, "score NMI on the concatenated layers");
}

void add_order_flags(CLI::App* app, mxplex::RunConfig& c) {
  app->add_option("--cut-rule", c.cut_rule, "dendrogram stopping rule")
      ->check(CLI::IsMember({"prose", "literal"}));
  app->add_option("--linkage", c.linkage, "agglomeration scheme")
      ->check(CLI::IsMember({"single", "average", "complete"}));
  app->add_option("--null-trials", c.null_trials, "Erdos-Renyi graphs per layer threshold");
  app->add_option("--embed-fits", c.embed_fits, "single-layer fits per layer embedding");
  app->add_flag("--raw-rows", c.raw_rows, "skip unit-norm scaling of embedding rows");
}

void add_input_flags(CLI::App* app, mxplex::RunConfig& c) {
  app->add_option("-i,--input", c.input, "multiplex edge-list file");
  app->add_option("--n", c.n_hint, "node count when the file has no header");
  app->add_flag("--normalize-max", c.normalize_max, "divide each layer by its largest weight");
}

void add_bench_flags(CLI::App* app, mxplex::RunConfig& c) {
  app->add_option("--nodes", c.n, "node count");
  app->add_option("--layers", c.layers, "layer count");
  app->add_option("--bench-kc", c.bench_common, "common communities");
  app->add_option("--bench-kp", c.bench_private, "private communities per layer (1 or L values)")
      ->delimiter(',');
  app->add_option("--presence", c.presence, "per common community, a 0/1 string over layers")
      ->delimiter(',');
  app->add_option("--common-nodes", c.common_nodes, "nodes reserved for common communities");
  app->add_option("--mu", c.mu, "mixing parameter")->check(CLI::Range(0.0, 1.0));
  app->add_option("--p1", c.p1, "interlayer dependency")->check(CLI::Range(0.0, 1.0));
  app->add_option("--avg-degree", c.avg_degree, "expected node degree");
}

}  // namespace

int main(int argc, char** argv) {
  mxplex::RunConfig c;
  c.seed = mxplex::default_seed();
  bool verbose = false, quiet = false;

  CLI::App app{"Common and private community detection in multiplex networks"};
  app.set_version_flag("--version", std::string(mxplex::version()));
  app.require_subcommand(1);
  app.add_option("--seed", c.seed, "master seed (default: $MXPLEX_SEED or 1)");
  app.add_option("--threads", c.threads, "worker threads, 0 = all cores; results do not depend on it");
  app.add_flag("-v,--verbose", verbose, "progress messages on stderr");
  app.add_flag("-q,--quiet", quiet, "suppress warnings");

  auto* gen = app.add_subcommand("generate", "write a synthetic benchmark with planted labels");
  gen->add_option("-o,--out", c.output, "output directory")->required();
  add_bench_flags(gen, c);

  auto* est = app.add_subcommand("estimate-k", "estimate per-layer, common and private counts");
  add_input_flags(est, c);
  est->add_option("-o,--out", c.output, "also write the report here");
  add_order_flags(est, c);
  est->add_option("--max-iters", c.max_iters, "iteration cap per embedding fit");
  est->add_option("--offdiag-scale", c.offdiag_scale, "affinity initialization scale");

  auto* det = app.add_subcommand("detect", "detect common and private communities");
  add_input_flags(det, c);
  det->add_option("-o,--out", c.output, "output directory")->required();
  det->add_option("--truth", c.truth, "reference labels (one file per layer or one shared)");
  det->add_option("--kc", c.common, "common community count (skips estimation)");
  det->add_option("--kp", c.private_counts, "private counts per layer (1 or L values)")->delimiter(',');
  det->add_option("--kl", c.per_layer, "communities per layer (default k_c + k_p)")->delimiter(',');
  det->add_option("--selector", c.selector, "restart selection metric")
      ->check(CLI::IsMember({"nmi", "qd"}));
  add_factorization_flags(det, c);
  add_order_flags(det, c);

  auto* base = app.add_subcommand("baseline", "single-layer factorization of the averaged layers");
  add_input_flags(base, c);
  base->add_option("-o,--out", c.output, "label file")->required();
  base->add_option("--k", c.k, "community count (default: eigengap estimate)");
  base->add_option("--fits", c.fits, "fits kept by lowest residual");
  base->add_option("--truth", c.truth, "reference labels to score against");
  base->add_option("--max-iters", c.max_iters, "iteration cap");
  base->add_option("--tol", c.tol, "convergence tolerance");
  base->add_option("--null-trials", c.null_trials, "null graphs for the eigengap threshold");
  base->add_flag("--pooled", c.pooled, "score NMI on the concatenated layers");

  auto* ev = app.add_subcommand("eval", "score label files");
  ev->add_option("--labels", c.labels, "label files under test")->required();
  ev->add_option("--truth", c.truth, "reference label files");
  add_input_flags(ev, c);
  ev->add_flag("--pooled", c.pooled, "score NMI on the concatenated layers");

  auto* sw = app.add_subcommand("sweep", "benchmark grid over one parameter");
  sw->add_option("--axis", c.axis, "swept parameter")->check(CLI::IsMember({"mu", "p1", "kc", "n"}));
  sw->add_option("--values", c.values, "parameter values")->delimiter(',')->required();
  sw->add_option("--realizations", c.realizations, "benchmarks per value");
  sw->add_option("--order", c.order_source, "planted or estimated community counts")
      ->check(CLI::IsMember({"truth", "estimate"}));
  sw->add_flag("--baseline", c.with_baseline, "also run the averaged-layer baseline");
  sw->add_option("--fits", c.fits, "baseline fits");
  sw->add_option("-o,--out", c.output, "CSV file");
  sw->add_option("--plot", c.plot, "SVG plot file");
  add_bench_flags(sw, c);
  add_factorization_flags(sw, c);
  add_order_flags(sw, c);

  CLI11_PARSE(app, argc, argv);

  if (quiet) mxplex::set_log_level(mxplex::LogLevel::kQuiet);
  if (verbose) mxplex::set_log_level(mxplex::LogLevel::kInfo);
  c.subcommand = app.get_subcommands().front()->get_name();
  return mxplex::run_command(c, std::cout);
}
