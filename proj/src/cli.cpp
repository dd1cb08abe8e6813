#include "mxplex/cli.hpp"

#include "mxplex/assign.hpp"
#include "mxplex/benchgen.hpp"
#include "mxplex/factorize.hpp"
#include "mxplex/log.hpp"
#include "mxplex/metrics.hpp"
#include "mxplex/model_order.hpp"
#include "mxplex/multiplex.hpp"
#include "mxplex/restarts.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#ifndef MXPLEX_VERSION
#define MXPLEX_VERSION "0.0.0"
#endif

namespace mxplex {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Stream index reserved for order estimation; restarts use 0..R-1.
constexpr std::uint64_t kOrderStream = 0x6f72646572ULL;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

json config_json(const RunConfig& c) {
  auto paths = [](const std::vector<fs::path>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(p.generic_string());
    return a;
  };
  json j;
  j["subcommand"] = c.subcommand;
  j["input"] = c.input.generic_string();
  j["output"] = c.output.generic_string();
  j["truth"] = paths(c.truth);
  j["labels"] = paths(c.labels);
  j["n_hint"] = c.n_hint ? json(*c.n_hint) : json(nullptr);
  j["normalize_max"] = c.normalize_max;
  j["restarts"] = c.restarts;
  j["max_iters"] = c.max_iters;
  j["tol"] = c.tol;
  j["window"] = c.window;
  j["offdiag_scale"] = c.offdiag_scale;
  j["k_c"] = c.common ? json(*c.common) : json(nullptr);
  j["k_p"] = c.private_counts;
  j["k_l"] = c.per_layer;
  j["selector"] = c.selector;
  j["pooled"] = c.pooled;
  j["legacy_qj"] = c.legacy_qj;
  j["cut_rule"] = c.cut_rule;
  j["linkage"] = c.linkage;
  j["null_trials"] = c.null_trials;
  j["embed_fits"] = c.embed_fits;
  j["raw_rows"] = c.raw_rows;
  j["n"] = c.n;
  j["layers"] = c.layers;
  j["bench_k_c"] = c.bench_common;
  j["bench_k_p"] = c.bench_private;
  j["presence"] = c.presence;
  j["common_nodes"] = c.common_nodes ? json(*c.common_nodes) : json(nullptr);
  j["mu"] = c.mu;
  j["p1"] = c.p1;
  j["avg_degree"] = c.avg_degree;
  j["k"] = c.k ? json(*c.k) : json(nullptr);
  j["fits"] = c.fits;
  j["axis"] = c.axis;
  j["values"] = c.values;
  j["realizations"] = c.realizations;
  j["order_source"] = c.order_source;
  j["with_baseline"] = c.with_baseline;
  return j;
}

// Thread count is left out on purpose: it never changes results.
void write_manifest(const fs::path& path, const RunConfig& c) {
  json m;
  m["tool"] = "mxplex";
  m["version"] = version();
  m["command"] = c.subcommand;
  m["seed"] = c.seed;
  m["config"] = config_json(c);
  write_text(path, m.dump(2) + "\n");
}

MultiplexNetwork load_network(const RunConfig& c) {
  if (c.input.empty()) throw UsageError(c.subcommand + ": --input is required");
  LoadOptions opt;
  opt.n_hint = c.n_hint;
  opt.normalize_max = c.normalize_max;
  std::vector<std::string> warnings;
  MultiplexNetwork net = load_multiplex(c.input, opt, &warnings);
  for (const auto& w : warnings) log_warning(w);
  return net;
}

std::vector<NodeLabels> load_label_set(const std::vector<fs::path>& files) {
  std::vector<NodeLabels> out;
  for (const auto& p : files) out.push_back(load_labels(p));
  return out;
}

RunOptions run_options(const RunConfig& c) {
  RunOptions r;
  r.max_iters = c.max_iters;
  r.tol = c.tol;
  r.window = c.window;
  r.init.affinity_offdiag_scale = c.offdiag_scale;
  return r;
}

OrderOptions order_options(const RunConfig& c) {
  OrderOptions o;
  o.null_trials = c.null_trials;
  o.method = parse_linkage_method(c.linkage);
  o.rule = parse_cut_rule(c.cut_rule);
  o.embed.fits = c.embed_fits;
  o.embed.normalize_rows = !c.raw_rows;
  o.embed.run = run_options(c);
  o.embed.run.init.affinity_offdiag_scale = c.offdiag_scale;
  return o;
}

std::vector<std::size_t> broadcast(const std::vector<std::size_t>& v, std::size_t layers,
                                   const char* what) {
  if (v.size() == 1) return std::vector<std::size_t>(layers, v[0]);
  if (v.size() != layers) {
    throw UsageError(std::string(what) + " needs 1 or " + std::to_string(layers) + " values");
  }
  return v;
}

ModelOrder supplied_order(const RunConfig& c, std::size_t layers) {
  if (c.private_counts.empty()) throw UsageError("--kp is required together with --kc");
  ModelOrder order = ModelOrder::all_common(*c.common, broadcast(c.private_counts, layers, "--kp"));
  if (!c.per_layer.empty()) order.per_layer = broadcast(c.per_layer, layers, "--kl");
  order.validate(layers);
  return order;
}

std::vector<std::vector<bool>> parse_presence(const std::vector<std::string>& rows,
                                              std::size_t layers) {
  std::vector<std::vector<bool>> out;
  for (const auto& row : rows) {
    if (row.size() != layers || row.find_first_not_of("01") != std::string::npos) {
      throw UsageError("--presence rows must be " + std::to_string(layers) + " characters of 0/1, got '" +
                       row + "'");
    }
    std::vector<bool> r;
    for (char ch : row) r.push_back(ch == '1');
    out.push_back(std::move(r));
  }
  return out;
}

BenchmarkSpec bench_spec(const RunConfig& c) {
  BenchmarkSpec s;
  s.n = c.n;
  s.layers = c.layers;
  s.common = c.bench_common;
  s.presence = parse_presence(c.presence, c.layers);
  s.common_nodes = c.common_nodes;
  s.private_counts = c.bench_private;
  s.mu = c.mu;
  s.p1 = c.p1;
  s.avg_degree = c.avg_degree;
  return s;
}

// True order of a benchmark: common communities present per layer plus the
// private counts.
ModelOrder planted_order(const BenchmarkSpec& s) {
  ModelOrder order;
  order.common = s.common;
  order.private_counts = s.private_counts_per_layer();
  const auto pres = s.presence_matrix();
  for (std::size_t l = 0; l < s.layers; ++l) {
    std::size_t present = 0;
    for (std::size_t j = 0; j < s.common; ++j) present += pres[j][l] ? 1 : 0;
    order.per_layer.push_back(present + order.private_counts[l]);
  }
  return order;
}

struct BaselineFit {
  NodeLabels labels;
  std::size_t k = 0;
};

BaselineFit aggregated_baseline(const MultiplexNetwork& net, std::optional<std::size_t> k,
                                std::uint64_t seed, std::size_t fits, const RunConfig& c) {
  const Matrix avg = aggregate_average(net);
  BaselineFit out;
  if (k) {
    out.k = *k;
  } else {
    const double delta = null_threshold(net.node_count(), edge_density(avg),
                                        RandomStream(seed, kOrderStream), c.null_trials);
    out.k = estimate_k_layer(avg, delta);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(fits, 1); ++r) {
    RandomStream stream(seed, r);
    SingleLayerFit fit = single_layer_onmtf(avg, out.k, stream, run_options(c));
    if (fit.residual_trace.back() < best) {
      best = fit.residual_trace.back();
      out.labels = NodeLabels{row_argmax(fit.membership)};
    }
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string svg_plot(const std::string& axis,
                     const std::map<std::string, std::vector<std::pair<double, double>>>& series) {
  const double w = 480, h = 320, left = 56, right = 16, top = 16, bottom = 44;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  for (const auto& [name, pts] : series) {
    for (const auto& [x, y] : pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    }
  }
  if (!(xmax > xmin)) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
  auto py = [&](double y) { return top + (1.0 - y) * (h - top - bottom); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << w - right << "\" y2=\"" << py(0)
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << left << "\" y2=\"" << py(1)
     << "\" stroke=\"black\"/>\n";
  for (double y : {0.0, 0.5, 1.0}) {
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
       << y << "</text>\n";
  }
  os << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 8
     << "\" font-size=\"12\" text-anchor=\"middle\">" << axis << "</text>\n";
  os << "<text x=\"14\" y=\"" << (top + h - bottom) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 "
     << (top + h - bottom) / 2 << ")\" text-anchor=\"middle\">mean NMI</text>\n";
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::size_t s = 0;
  for (const auto& [name, pts] : series) {
    const char* color = colors[s % 4];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) os << px(x) << "," << py(std::clamp(y, 0.0, 1.0)) << " ";
    os << "\"/>\n";
    for (const auto& [x, y] : pts) {
      os << "<text x=\"" << px(x) << "\" y=\"" << h - bottom + 16 << "\" font-size=\"10\" text-anchor=\"middle\">"
         << x << "</text>\n";
    }
    os << "<text x=\"" << w - right - 4 << "\" y=\"" << top + 14 * (s + 1)
       << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">" << name << "</text>\n";
    ++s;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

const char* version() { return MXPLEX_VERSION; }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MXPLEX_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    log_warning(std::string("ignoring malformed MXPLEX_SEED '") + env + "'");
  }
  return 1;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  if (c.output.empty()) throw UsageError("generate: --out is required");
  const BenchmarkSpec spec = bench_spec(c);
  const Benchmark b = generate(spec, RandomStream(c.seed, 0));
  fs::create_directories(c.output);
  save_multiplex(c.output / "network.txt", b.network);
  for (std::size_t l = 0; l < b.truth.size(); ++l) {
    save_labels(c.output / ("truth_l" + std::to_string(l) + ".txt"), b.truth[l]);
  }
  const ModelOrder order = planted_order(spec);
  json summary;
  summary["order"] = order.record();
  summary["k_l"] = order.per_layer;
  summary["k_c"] = order.common;
  summary["k_p"] = order.private_counts;
  write_text(c.output / "planted.json", summary.dump(2) + "\n");
  write_manifest(c.output / "manifest.json", c);
  std::size_t edges = 0;
  for (const auto& a : b.network.layers()) edges += static_cast<std::size_t>(a.sum() / 2.0);
  out << "wrote " << b.network.layer_count() << " layers, n=" << b.network.node_count()
      << ", edges=" << edges << " to " << c.output.string() << "\n";
  out << "planted " << order.record() << "\n";
  return kExitOk;
}

int cmd_estimate_k(const RunConfig& c, std::ostream& out) {
  const MultiplexNetwork net = load_network(c);
  const OrderReport report = estimate_order(net, RandomStream(c.seed, kOrderStream), order_options(c));
  std::ostringstream text;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    text << "layer " << l << ": density=" << short_double(report.densities[l])
         << " delta=" << short_double(report.thresholds[l]) << " k=" << report.order.per_layer[l]
         << " private=" << report.order.private_counts[l] << "\n";
  }
  text << "merges:";
  for (const auto& m : report.merges.merges) {
    text << " (" << m.a << "," << m.b << "," << short_double(m.distance) << ")";
  }
  text << "\n" << report.order.record() << "\n";
  out << text.str();
  if (!c.output.empty()) {
    if (c.output.has_parent_path()) fs::create_directories(c.output.parent_path());
    write_text(c.output, text.str());
    write_manifest(fs::path(c.output.string() + ".manifest.json"), c);
  }
  return kExitOk;
}

int cmd_detect(const RunConfig& c, std::ostream& out) {
  if (c.output.empty()) throw UsageError("detect: --out is required");
  const MultiplexNetwork net = load_network(c);
  const std::vector<NodeLabels> truth = load_label_set(c.truth);

  ModelOrder order;
  if (c.common) {
    order = supplied_order(c, net.layer_count());
  } else {
    order = estimate_order(net, RandomStream(c.seed, kOrderStream), order_options(c)).order;
  }

  RestartOptions opt;
  opt.restarts = c.restarts;
  opt.threads = c.threads;
  opt.run = run_options(c);
  opt.presence = c.legacy_qj ? PresenceRule::kLegacy : PresenceRule::kCorrected;
  opt.pooled_nmi = c.pooled;
  if (!c.selector.empty()) opt.selector = parse_selector(c.selector);
  const RestartOutcome res = run_restarts(net, order, c.seed, opt, truth.empty() ? nullptr : &truth);

  fs::create_directories(c.output);
  for (std::size_t l = 0; l < res.labels.layers.size(); ++l) {
    save_labels(c.output / ("labels_l" + std::to_string(l) + ".txt"), res.labels.layers[l]);
  }
  std::string trace;
  for (double v : res.best.objective_trace) trace += format_double(v) + "\n";
  write_text(c.output / "trace.txt", trace);
  std::string scores = "restart,score\n";
  for (std::size_t r = 0; r < res.scores.size(); ++r) {
    scores += std::to_string(r) + "," + format_double(res.scores[r]) + "\n";
  }
  write_text(c.output / "scores.csv", scores);

  json summary;
  summary["order"] = order.record();
  summary["k_c"] = order.common;
  summary["k_p"] = order.private_counts;
  summary["k_l"] = order.per_layer;
  summary["selector"] = selector_name(res.selector);
  summary["best_restart"] = res.best_index;
  summary["best_score"] = res.scores[res.best_index];
  summary["iterations"] = res.best.iterations_used;
  summary["objective"] = res.best.objective_trace.back();
  summary["rescued_columns"] = res.best.rescued_columns;
  summary["presence"] = res.presence.matrix(order.common);
  summary["presence_scores"] = res.presence.scores;
  json common_ids = json::array();
  for (const auto& cols : res.presence.columns) {
    std::vector<std::size_t> sorted = cols;
    std::sort(sorted.begin(), sorted.end());
    common_ids.push_back(sorted);
  }
  summary["common_ids"] = common_ids;
  json gaps = json::array();
  gaps.push_back(orthogonality_gap(res.best.factors.common));
  for (const auto& hl : res.best.factors.private_members) gaps.push_back(orthogonality_gap(hl));
  summary["orthogonality_gap"] = gaps;
  write_text(c.output / "summary.json", summary.dump(2) + "\n");
  write_manifest(c.output / "manifest.json", c);

  out << "order " << order.record() << "\n";
  out << "best restart " << res.best_index << " of " << res.scores.size() << ", "
      << selector_name(res.selector) << "=" << short_double(res.scores[res.best_index])
      << ", objective=" << short_double(res.best.objective_trace.back()) << " after "
      << res.best.iterations_used << " iterations\n";
  if (!truth.empty()) {
    out << "nmi\t" << short_double(multiplex_nmi(res.labels.layers, truth, c.pooled)) << "\n";
  }
  out << "qd\t" << short_double(multiplex_modularity_density(net, res.labels.layers)) << "\n";
  return kExitOk;
}

int cmd_baseline(const RunConfig& c, std::ostream& out) {
  if (c.output.empty()) throw UsageError("baseline: --out is required");
  const MultiplexNetwork net = load_network(c);
  const BaselineFit fit = aggregated_baseline(net, c.k, c.seed, c.fits, c);
  if (c.output.has_parent_path()) fs::create_directories(c.output.parent_path());
  save_labels(c.output, fit.labels);
  write_manifest(fs::path(c.output.string() + ".manifest.json"), c);
  out << "k\t" << fit.k << "\n";
  const std::vector<NodeLabels> truth = load_label_set(c.truth);
  if (!truth.empty()) {
    const std::vector<NodeLabels> found(truth.size() == 1 ? net.layer_count() : truth.size(), fit.labels);
    out << "nmi\t" << short_double(multiplex_nmi(found, truth, c.pooled)) << "\n";
  }
  return kExitOk;
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  if (c.labels.empty()) throw UsageError("eval: --labels is required");
  const std::vector<NodeLabels> found = load_label_set(c.labels);
  if (c.truth.empty() && c.input.empty()) throw UsageError("eval: pass --truth and/or --input");
  if (!c.truth.empty()) {
    const std::vector<NodeLabels> truth = load_label_set(c.truth);
    if (found.size() == truth.size() && found.size() > 1) {
      for (std::size_t l = 0; l < found.size(); ++l) {
        out << "nmi_l" << l << "\t" << format_double(nmi(found[l], truth[l])) << "\n";
      }
    }
    out << "nmi\t" << format_double(multiplex_nmi(found, truth, c.pooled)) << "\n";
  }
  if (!c.input.empty()) {
    const MultiplexNetwork net = load_network(c);
    std::vector<NodeLabels> per_layer = found;
    if (found.size() == 1) per_layer.assign(net.layer_count(), found[0]);
    for (std::size_t l = 0; l < per_layer.size() && per_layer.size() > 1; ++l) {
      out << "qd_l" << l << "\t" << format_double(modularity_density(net.layer(l), per_layer[l])) << "\n";
    }
    out << "qd\t" << format_double(multiplex_modularity_density(net, per_layer)) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  static const std::vector<std::string> axes{"mu", "p1", "kc", "n"};
  if (std::find(axes.begin(), axes.end(), c.axis) == axes.end()) {
    throw UsageError("sweep: --axis must be one of mu, p1, kc, n (got '" + c.axis + "')");
  }
  if (c.values.empty()) throw UsageError("sweep: --values is required");
  if (c.realizations == 0) throw UsageError("sweep: --realizations must be positive");
  if (c.order_source != "truth" && c.order_source != "estimate") {
    throw UsageError("sweep: --order must be truth or estimate");
  }

  std::ostringstream csv;
  csv << "axis,value,method,realizations,mean_nmi,std_nmi,mean_seconds\n";
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (std::size_t vi = 0; vi < c.values.size(); ++vi) {
    const double value = c.values[vi];
    RunConfig point = c;
    if (c.axis == "mu") point.mu = value;
    if (c.axis == "p1") point.p1 = value;
    if (c.axis == "kc") point.bench_common = static_cast<std::size_t>(std::llround(value));
    if (c.axis == "n") point.n = static_cast<std::size_t>(std::llround(value));
    const BenchmarkSpec spec = bench_spec(point);

    std::vector<double> nmis, seconds, base_nmis, base_seconds;
    for (std::size_t r = 0; r < c.realizations; ++r) {
      const RandomStream realization = RandomStream(c.seed, r).derive(vi);
      const Benchmark b = generate(spec, realization.derive(0));
      const std::uint64_t run_seed = realization.derive(1).next_u64();

      const auto t0 = std::chrono::steady_clock::now();
      ModelOrder order = planted_order(spec);
      if (c.order_source == "estimate") {
        order = estimate_order(b.network, realization.derive(2), order_options(c)).order;
      }
      RestartOptions opt;
      opt.restarts = c.restarts;
      opt.threads = c.threads;
      opt.run = run_options(c);
      opt.presence = c.legacy_qj ? PresenceRule::kLegacy : PresenceRule::kCorrected;
      opt.pooled_nmi = c.pooled;
      const RestartOutcome res = run_restarts(b.network, order, run_seed, opt, &b.truth);
      const auto t1 = std::chrono::steady_clock::now();
      nmis.push_back(multiplex_nmi(res.labels.layers, b.truth, c.pooled));
      seconds.push_back(std::chrono::duration<double>(t1 - t0).count());

      if (c.with_baseline) {
        std::optional<std::size_t> k;
        if (c.order_source == "truth") {
          std::size_t total = spec.common;
          for (std::size_t kp : spec.private_counts_per_layer()) total += kp;
          k = total;
        }
        const auto t2 = std::chrono::steady_clock::now();
        const BaselineFit fit = aggregated_baseline(b.network, k, run_seed, c.fits, c);
        const auto t3 = std::chrono::steady_clock::now();
        const std::vector<NodeLabels> found(b.truth.size(), fit.labels);
        base_nmis.push_back(multiplex_nmi(found, b.truth, c.pooled));
        base_seconds.push_back(std::chrono::duration<double>(t3 - t2).count());
      }
    }
    auto row = [&](const char* method, const std::vector<double>& v, const std::vector<double>& t) {
      csv << c.axis << "," << short_double(value) << "," << method << "," << v.size() << ","
          << short_double(mean_of(v)) << "," << short_double(sample_std(v)) << ","
          << short_double(mean_of(t)) << "\n";
      series[method].emplace_back(value, mean_of(v));
    };
    row("mx-onmtf", nmis, seconds);
    if (c.with_baseline) row("aggregated-average", base_nmis, base_seconds);
    log_info("sweep " + c.axis + "=" + short_double(value) + " done");
  }

  out << csv.str();
  if (!c.output.empty()) {
    if (c.output.has_parent_path()) fs::create_directories(c.output.parent_path());
    write_text(c.output, csv.str());
    write_manifest(fs::path(c.output.string() + ".manifest.json"), c);
  }
  if (!c.plot.empty()) write_text(c.plot, svg_plot(c.axis, series));
  return kExitOk;
}

int run_command(const RunConfig& c, std::ostream& out) {
  try {
    if (c.subcommand == "generate") return cmd_generate(c, out);
    if (c.subcommand == "estimate-k") return cmd_estimate_k(c, out);
    if (c.subcommand == "detect") return cmd_detect(c, out);
    if (c.subcommand == "baseline") return cmd_baseline(c, out);
    if (c.subcommand == "eval") return cmd_eval(c, out);
    if (c.subcommand == "sweep") return cmd_sweep(c, out);
    throw UsageError("unknown subcommand '" + c.subcommand + "'");
  } catch (const InputError& e) {
    std::cerr << "mxplex: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "mxplex: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "mxplex: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace mxplex
