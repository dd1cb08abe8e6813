// Acceptance checks. Usage: acceptance [criterion...]; with no arguments all
// eight run. One PASS/FAIL line per criterion; exit status is nonzero when
// any selected criterion fails.

#include "mxplex/assign.hpp"
#include "mxplex/benchgen.hpp"
#include "mxplex/factorize.hpp"
#include "mxplex/log.hpp"
#include "mxplex/metrics.hpp"
#include "mxplex/model_order.hpp"
#include "mxplex/restarts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#ifndef MXPLEX_CLI_PATH
#define MXPLEX_CLI_PATH "mxplex"
#endif

using namespace mxplex;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

BenchmarkSpec standard_spec(std::size_t n, double mu) {
  BenchmarkSpec s;
  s.n = n;
  s.layers = 3;
  s.common = 2;
  s.private_counts = {2};
  s.mu = mu;
  s.p1 = 1.0;
  s.avg_degree = 16.0;
  return s;
}

ModelOrder standard_order() { return ModelOrder::all_common(2, {2, 2, 2}); }

Matrix random_binary_layer(std::size_t n, double density, RandomStream& s) {
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (s.bernoulli(density)) a(i, j) = a(j, i) = 1.0;
    }
  }
  return a;
}

Verdict monotone_descent() {
  const auto t0 = Clock::now();
  std::size_t violating_runs = 0, violating_steps = 0, steps = 0;
  double worst = 0.0;
  for (std::size_t trial = 0; trial < 20; ++trial) {
    RandomStream s(101, trial);
    std::vector<Matrix> layers;
    for (int l = 0; l < 3; ++l) layers.push_back(random_binary_layer(64, s.uniform(0.05, 0.4), s));
    const MultiplexNetwork net(std::move(layers));
    const std::size_t kc = 1 + s.below(3);
    std::vector<std::size_t> kp;
    for (int l = 0; l < 3; ++l) kp.push_back(1 + s.below(3));
    RunOptions opt;
    opt.max_iters = 1000;
    opt.tol = 0.0;  // run the full 1000 sweeps
    RandomStream run_stream(202, trial);
    const RunResult r = run_once(net, ModelOrder::all_common(kc, kp), run_stream, opt);
    bool bad = false;
    for (std::size_t t = 1; t < r.objective_trace.size(); ++t) {
      const double prev = r.objective_trace[t - 1], cur = r.objective_trace[t];
      ++steps;
      if (cur - prev > 1e-9 * (1.0 + std::abs(prev))) {
        bad = true;
        ++violating_steps;
        worst = std::max(worst, (cur - prev) / prev);
      }
    }
    violating_runs += bad ? 1 : 0;
  }
  const double elapsed = seconds_since(t0);
  Verdict v;
  v.pass = violating_runs == 0 && elapsed < 120.0;
  v.detail = std::to_string(violating_runs) + "/20 traces increase; " + std::to_string(violating_steps) +
             "/" + std::to_string(steps) + " steps above 1e-9(1+|obj|), worst relative rise " +
             fmt(worst) + "; " + fmt(elapsed, 3) + " s";
  return v;
}

Verdict recovery_fixed_point() {
  double worst_obj = 0.0, worst_move = 0.0;
  for (std::size_t trial = 0; trial < 10; ++trial) {
    RandomStream s(303, trial);
    const std::size_t n = 48 + 8 * s.below(7);  // 48..96
    const std::size_t kc = 1 + s.below(3);
    std::vector<std::size_t> kp;
    const std::size_t layers = 2 + s.below(3);
    for (std::size_t l = 0; l < layers; ++l) kp.push_back(1 + s.below(3));
    const PopulationSBM p = random_population_sbm(s, n, kc, kp);
    const MultiplexNetwork net = population_adjacency(p);
    FactorSet f = analytic_factors(p);
    worst_obj = std::max(worst_obj, objective(net, f));
    const FactorSet before = f;
    update_sweep(net, f);
    double move = (f.common - before.common).cwiseAbs().maxCoeff();
    for (std::size_t l = 0; l < layers; ++l) {
      move = std::max(move, (f.private_members[l] - before.private_members[l]).cwiseAbs().maxCoeff());
      move = std::max(move, (f.common_affinity[l] - before.common_affinity[l]).cwiseAbs().maxCoeff());
      move = std::max(move, (f.private_affinity[l] - before.private_affinity[l]).cwiseAbs().maxCoeff());
    }
    worst_move = std::max(worst_move, move);
  }
  Verdict v;
  v.pass = worst_obj < 1e-10 && worst_move < 1e-6;
  v.detail = "max objective " + fmt(worst_obj) + ", max factor change " + fmt(worst_move);
  return v;
}

Verdict exact_recovery() {
  const auto t0 = Clock::now();
  std::size_t exact = 0;
  std::string per_seed;
  for (std::size_t seed = 0; seed < 10; ++seed) {
    const Benchmark b = generate(standard_spec(128, 0.0), RandomStream(404, seed));
    RestartOptions opt;
    opt.restarts = 50;
    const RestartOutcome res = run_restarts(b.network, standard_order(), 505 + seed, opt, &b.truth);
    double min_layer = 1.0;
    for (std::size_t l = 0; l < 3; ++l) min_layer = std::min(min_layer, nmi(res.labels.layers[l], b.truth[l]));
    exact += min_layer >= 1.0 - 1e-12 ? 1 : 0;
    per_seed += (seed ? " " : "") + fmt(min_layer, 3);
  }
  const double elapsed = seconds_since(t0);
  Verdict v;
  v.pass = exact >= 9 && elapsed < 600.0;
  v.detail = std::to_string(exact) + "/10 seeds exact (min per-layer NMI: " + per_seed + "); " +
             fmt(elapsed, 3) + " s";
  return v;
}

double baseline_nmi(const Benchmark& b, std::uint64_t seed) {
  const Matrix avg = aggregate_average(b.network);
  double best = std::numeric_limits<double>::infinity();
  NodeLabels labels;
  for (std::size_t r = 0; r < 5; ++r) {
    RandomStream s(seed, r);
    const SingleLayerFit fit = single_layer_onmtf(avg, 2 + 3 * 2, s);
    if (fit.residual_trace.back() < best) {
      best = fit.residual_trace.back();
      labels = NodeLabels{row_argmax(fit.membership)};
    }
  }
  const std::vector<NodeLabels> found(b.truth.size(), labels);
  return multiplex_nmi(found, b.truth);
}

Verdict mu_sweep() {
  const std::vector<double> mus{0.1, 0.3, 0.5, 0.7};
  std::vector<double> means, base_means;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    double sum = 0.0, base_sum = 0.0;
    for (std::size_t r = 0; r < 10; ++r) {
      const Benchmark b = generate(standard_spec(256, mus[i]), RandomStream(606 + i, r));
      RestartOptions opt;
      opt.restarts = 50;
      const RestartOutcome res = run_restarts(b.network, standard_order(), 707 + r, opt, &b.truth);
      sum += multiplex_nmi(res.labels.layers, b.truth);
      base_sum += baseline_nmi(b, 808 + r);
    }
    means.push_back(sum / 10.0);
    base_means.push_back(base_sum / 10.0);
  }
  bool shape = means[0] >= 0.95;
  for (std::size_t i = 1; i < means.size(); ++i) shape = shape && means[i] <= means[i - 1] + 0.05;
  Verdict v;
  v.pass = shape;
  v.detail = "mean NMI";
  for (std::size_t i = 0; i < mus.size(); ++i) {
    v.detail += " mu=" + fmt(mus[i], 2) + ":" + fmt(means[i], 3) + " (avg baseline " + fmt(base_means[i], 3) + ")";
  }
  return v;
}

Linkage worked_example_linkage() {
  // k = (6, 6, 5): leaves 1-6, 7-12, 13-17. Common X sits in all three
  // layers (leaves 1, 7, 13), Y in layers 1 and 3 (2, 14), Z in layers 1
  // and 2 (3, 8). Everything else is private.
  Linkage f;
  f.leaf_count = 17;
  f.merges = {{1, 7, 0.010}, {18, 13, 0.011}, {2, 14, 0.012}, {3, 8, 0.013}};
  std::vector<std::size_t> active{4, 5, 6, 9, 10, 11, 12, 15, 16, 17, 19, 20, 21};
  std::size_t next = 22;
  double d = 0.9;
  while (active.size() > 1) {
    const std::size_t a = active[0], b = active[1];
    f.merges.push_back({a, b, d});
    active.erase(active.begin(), active.begin() + 2);
    active.push_back(next++);
    d += 0.05;
  }
  return f;
}

Verdict model_order() {
  std::size_t correct = 0;
  std::string misses;
  for (std::size_t seed = 0; seed < 20; ++seed) {
    const Benchmark b = generate(standard_spec(256, 0.05), RandomStream(909, seed));
    const OrderReport rep = estimate_order(b.network, RandomStream(1010, seed));
    const ModelOrder& o = rep.order;
    const bool ok = o.per_layer == std::vector<std::size_t>{4, 4, 4} && o.common == 2 &&
                    o.private_counts == std::vector<std::size_t>{2, 2, 2};
    correct += ok ? 1 : 0;
    if (!ok) misses += " seed " + std::to_string(seed) + ": " + o.record() + ";";
  }
  const ModelOrder example = count_common(worked_example_linkage(), {6, 6, 5});
  const bool example_ok = example.common == 3 && example.private_counts == std::vector<std::size_t>{3, 4, 3};
  Verdict v;
  v.pass = correct >= 18 && example_ok;
  v.detail = std::to_string(correct) + "/20 seeds recover k_l=[4,4,4] k_c=2 k_p=[2,2,2]; worked example " +
             example.record() + (misses.empty() ? "" : "; misses:" + misses);
  return v;
}

// Brute-force references written independently of the library.
double nmi_reference(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = static_cast<double>(a.size());
  std::map<int, double> pa, pb;
  std::map<std::pair<int, int>, double> pab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
    pab[{a[i], b[i]}] += 1.0;
  }
  if (pa.size() == 1 && pb.size() == 1) return 1.0;
  if (pa.size() == 1 || pb.size() == 1) return 0.0;
  double num = 0.0;
  for (const auto& [ia, na] : pa) {
    for (const auto& [ib, nb] : pb) {
      auto it = pab.find({ia, ib});
      if (it == pab.end()) continue;
      num += it->second * std::log(it->second * n / (na * nb));
    }
  }
  double den = 0.0;
  for (const auto& [k, c] : pa) den += c * std::log(c / n);
  for (const auto& [k, c] : pb) den += c * std::log(c / n);
  return -2.0 * num / den;
}

double qd_reference(const Matrix& a, const std::vector<int>& labels) {
  std::map<int, std::vector<Eigen::Index>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(static_cast<Eigen::Index>(i));
  double q = 0.0;
  for (const auto& [c, members] : groups) {
    double in = 0.0, out = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const bool ii = labels[static_cast<std::size_t>(i)] == c;
        const bool jj = labels[static_cast<std::size_t>(j)] == c;
        if (ii && jj && i != j) in += 0.5 * a(i, j);
        if (ii && !jj) out += a(i, j);
      }
    }
    q += (2.0 * in - out) / static_cast<double>(members.size());
  }
  return q;
}

Verdict metric_oracles() {
  double nmi_err = 0.0, qd_err = 0.0, sym_err = 0.0, perm_err = 0.0;
  for (std::size_t trial = 0; trial < 1000; ++trial) {
    RandomStream s(1111, trial);
    const std::size_t n = 1 + s.below(30);
    const std::size_t ka = 1 + s.below(6), kb = 1 + s.below(6);
    NodeLabels a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.labels.push_back(static_cast<int>(s.below(ka)));
      b.labels.push_back(static_cast<int>(s.below(kb)) * 3 + 1);
    }
    const double v = nmi(a, b);
    nmi_err = std::max(nmi_err, std::abs(v - nmi_reference(a.labels, b.labels)));
    sym_err = std::max(sym_err, std::abs(v - nmi(b, a)));
    // relabel a through a random permutation of its ids
    std::vector<int> perm(ka);
    std::iota(perm.begin(), perm.end(), 0);
    s.shuffle(perm);
    NodeLabels a2 = a;
    for (int& x : a2.labels) x = perm[static_cast<std::size_t>(x)] + 100;
    perm_err = std::max(perm_err, std::abs(v - nmi(a2, b)));

    Matrix g = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const bool weighted = s.bernoulli(0.5);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < g.cols(); ++j) {
        if (s.bernoulli(0.3)) g(i, j) = g(j, i) = weighted ? s.uniform() : 1.0;
      }
    }
    qd_err = std::max(qd_err, std::abs(modularity_density(g, a) - qd_reference(g, a.labels)));
    perm_err = std::max(perm_err, std::abs(modularity_density(g, a) - modularity_density(g, a2)));
  }
  Verdict v;
  v.pass = nmi_err <= 1e-12 && qd_err <= 1e-12 && sym_err <= 1e-12 && perm_err <= 1e-12;
  v.detail = "max |NMI - oracle| " + fmt(nmi_err) + ", max |Q_D - oracle| " + fmt(qd_err) +
             ", symmetry " + fmt(sym_err) + ", permutation " + fmt(perm_err);
  return v;
}

Verdict scaling() {
  const std::vector<std::size_t> sizes{64, 128, 256, 512};
  std::vector<double> per_iter;
  for (std::size_t n : sizes) {
    const Benchmark b = generate(standard_spec(n, 0.1), RandomStream(1212, n));
    RunOptions opt;
    opt.tol = 0.0;
    opt.max_iters = std::max<std::size_t>(50, 2000 * 64 * 64 / (n * n));
    std::vector<double> samples;
    for (int rep = 0; rep < 5; ++rep) {
      RandomStream s(1313, static_cast<std::uint64_t>(rep));
      const auto t0 = Clock::now();
      const RunResult r = run_once(b.network, standard_order(), s, opt);
      samples.push_back(seconds_since(t0) / static_cast<double>(r.iterations_used));
    }
    std::sort(samples.begin(), samples.end());
    per_iter.push_back(samples[samples.size() / 2]);
  }
  bool ok = true;
  std::string detail = "per-iteration seconds";
  for (std::size_t i = 0; i < sizes.size(); ++i) detail += " n=" + std::to_string(sizes[i]) + ":" + fmt(per_iter[i], 3);
  detail += "; ratios";
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const double ratio = per_iter[i] / per_iter[i - 1];
    ok = ok && ratio >= 4.0 / 1.6 && ratio <= 4.0 * 1.6;
    detail += " " + fmt(ratio, 3);
  }
  detail += " (quadratic 4, allowed [2.5, 6.4])";
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "mxplex_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string cli = MXPLEX_CLI_PATH;
  auto run = [](const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); };
  if (run(cli + " --seed 3 generate -o " + (root / "bench").string() + " --nodes 128 --mu 0.1") != 0) {
    return {false, "generate failed"};
  }
  const std::string detect = cli + " --seed 7 --threads 4 detect -i " + (root / "bench" / "network.txt").string() +
                             " --restarts 8 -o ";
  if (run(detect + (root / "a").string()) != 0 || run(detect + (root / "b").string()) != 0) {
    return {false, "detect failed"};
  }
  std::vector<std::string> files{"trace.txt", "scores.csv", "summary.json"};
  for (int l = 0; l < 3; ++l) files.push_back("labels_l" + std::to_string(l) + ".txt");
  for (const auto& f : files) {
    const std::string x = slurp(root / "a" / f), y = slurp(root / "b" / f);
    if (x.empty() || x != y) return {false, f + " differs between runs"};
  }
  fs::remove_all(root);
  return {true, "labels, trace, scores and summary byte-identical across two 4-thread runs"};
}

}  // namespace

int main(int argc, char** argv) {
  set_log_level(LogLevel::kQuiet);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"monotone descent", monotone_descent},
      {"fixed point at population factors", recovery_fixed_point},
      {"exact recovery at mu=0", exact_recovery},
      {"mu sweep shape", mu_sweep},
      {"model order", model_order},
      {"metric oracles", metric_oracles},
      {"per-iteration scaling", scaling},
      {"determinism", determinism},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(static_cast<std::size_t>(std::atoi(argv[i])));
  if (selected.empty()) {
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(i);
  }
  int failures = 0;
  for (std::size_t id : selected) {
    if (id < 1 || id > criteria.size()) {
      std::cout << "FAIL criterion " << id << ": no such criterion\n";
      ++failures;
      continue;
    }
    const auto& [name, check] = criteria[id - 1];
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << v.detail
              << std::endl;
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
