#include "mxplex/multiplex.hpp"

#include "mxplex/log.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace mxplex {

MultiplexNetwork::MultiplexNetwork(std::vector<Matrix> layers, Diagonal diagonal)
    : layers_(std::move(layers)) {
  if (layers_.empty()) throw DimensionError("MultiplexNetwork: at least one layer is required");
  n_ = static_cast<std::size_t>(layers_.front().rows());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Matrix& a = layers_[l];
    const std::string where = "MultiplexNetwork layer " + std::to_string(l);
    if (static_cast<std::size_t>(a.rows()) != n_ || static_cast<std::size_t>(a.cols()) != n_) {
      throw DimensionError(where + ": expected " + std::to_string(n_) + "x" + std::to_string(n_) +
                           ", got " + shape_of(a));
    }
    if (!a.allFinite()) throw DimensionError(where + ": non-finite entry");
    if (n_ > 0 && a.minCoeff() < 0.0) throw DimensionError(where + ": negative entry");
    if (n_ > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw DimensionError(where + ": not symmetric");
    }
    if (diagonal == Diagonal::kZero && n_ > 0 && a.diagonal().cwiseAbs().maxCoeff() != 0.0) {
      throw DimensionError(where + ": nonzero diagonal");
    }
  }
}

bool operator==(const MultiplexNetwork& a, const MultiplexNetwork& b) {
  if (a.n_ != b.n_ || a.layers_.size() != b.layers_.size()) return false;
  for (std::size_t l = 0; l < a.layers_.size(); ++l) {
    if (a.layers_[l] != b.layers_[l]) return false;
  }
  return true;
}

std::size_t NodeLabels::community_count() const {
  std::vector<int> ids = labels;
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

NodeLabels NodeLabels::canonical() const {
  std::unordered_map<int, int> remap;
  NodeLabels out;
  out.labels.reserve(labels.size());
  for (int id : labels) {
    auto [it, inserted] = remap.emplace(id, static_cast<int>(remap.size()));
    out.labels.push_back(it->second);
  }
  return out;
}

namespace {

std::string at_line(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

template <typename T>
bool parse_number(const std::string& token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

struct Header {
  std::optional<std::size_t> n;
  std::optional<std::size_t> layers;
};

Header parse_header(const std::string& line, const std::filesystem::path& path, std::size_t lineno) {
  Header h;
  auto fields = split_fields(line);
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    std::size_t value = 0;
    if (eq == std::string::npos || !parse_number(fields[i].substr(eq + 1), value)) {
      throw ParseError(at_line(path, lineno) + "malformed header field '" + fields[i] + "'");
    }
    const std::string key = fields[i].substr(0, eq);
    if (key == "n") {
      h.n = value;
    } else if (key == "L") {
      h.layers = value;
    } else {
      throw ParseError(at_line(path, lineno) + "unknown header key '" + key + "'");
    }
  }
  return h;
}

struct Edge {
  std::size_t layer, u, v;
  double w;
};

}  // namespace

MultiplexNetwork load_multiplex(const std::filesystem::path& path, const LoadOptions& options,
                                std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());

  Header header;
  std::vector<Edge> edges;
  std::size_t self_loops = 0;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.rfind("%mxplex", 0) == 0) {
      if (!edges.empty()) throw ParseError(at_line(path, lineno) + "header must precede edges");
      header = parse_header(raw, path, lineno);
      continue;
    }
    auto fields = split_fields(strip_comment(raw));
    if (fields.empty()) continue;
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError(at_line(path, lineno) + "expected 'layer u v [weight]'");
    }
    Edge e{};
    if (!parse_number(fields[0], e.layer) || !parse_number(fields[1], e.u) ||
        !parse_number(fields[2], e.v)) {
      throw ParseError(at_line(path, lineno) + "ids must be nonnegative integers");
    }
    e.w = 1.0;
    if (fields.size() == 4) {
      // from_chars for double is available in GCC 11+.
      if (!parse_number(fields[3], e.w) || !std::isfinite(e.w)) {
        throw ParseError(at_line(path, lineno) + "malformed weight '" + fields[3] + "'");
      }
      if (e.w < 0.0) throw ParseError(at_line(path, lineno) + "negative weight");
    }
    if (header.layers && e.layer >= *header.layers) {
      throw ParseError(at_line(path, lineno) + "layer " + std::to_string(e.layer) +
                       " outside declared range L=" + std::to_string(*header.layers));
    }
    if (header.n && (e.u >= *header.n || e.v >= *header.n)) {
      throw ParseError(at_line(path, lineno) + "node id outside declared range n=" +
                       std::to_string(*header.n));
    }
    if (e.u == e.v) {
      ++self_loops;
      continue;
    }
    edges.push_back(e);
  }

  std::size_t n = header.n.value_or(0);
  std::size_t layers = header.layers.value_or(0);
  for (const auto& e : edges) {
    if (!header.n) n = std::max(n, std::max(e.u, e.v) + 1);
    if (!header.layers) layers = std::max(layers, e.layer + 1);
  }
  if (options.n_hint) {
    if (*options.n_hint < n) {
      throw ParseError(path.string() + ": n_hint " + std::to_string(*options.n_hint) +
                       " is smaller than the largest node id + 1 (" + std::to_string(n) + ")");
    }
    n = *options.n_hint;
  }
  if (layers == 0) layers = 1;

  std::vector<Matrix> mats(layers, Matrix::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n)));
  for (const auto& e : edges) {
    auto& a = mats[e.layer];
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    const double w = std::max(a(u, v), e.w);
    a(u, v) = w;
    a(v, u) = w;
  }
  if (options.normalize_max) {
    for (auto& a : mats) {
      const double top = a.size() ? a.maxCoeff() : 0.0;
      if (top > 0.0) a /= top;
    }
  }
  if (self_loops > 0) {
    std::string msg = path.string() + ": dropped " + std::to_string(self_loops) + " self-loop(s)";
    log_warning(msg);
    if (warnings) warnings->push_back(msg);
  }
  return MultiplexNetwork(std::move(mats));
}

void save_multiplex(const std::filesystem::path& path, const MultiplexNetwork& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "%mxplex n=" << net.node_count() << " L=" << net.layer_count() << "\n";
  char buf[64];
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const Matrix& a = net.layer(l);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
        if (a(i, j) == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
        out << l << ' ' << i << ' ' << j << ' ' << buf << '\n';
      }
    }
  }
}

NodeLabels load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::map<std::size_t, int> by_node;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto fields = split_fields(strip_comment(raw));
    if (fields.empty()) continue;
    std::size_t node = 0;
    int community = 0;
    if (fields.size() != 2 || !parse_number(fields[0], node) ||
        !parse_number(fields[1], community) || community < 0) {
      throw ParseError(at_line(path, lineno) + "expected 'node_id community_id'");
    }
    if (!by_node.emplace(node, community).second) {
      throw ParseError(at_line(path, lineno) + "duplicate node id " + std::to_string(node));
    }
  }
  NodeLabels out;
  out.labels.reserve(by_node.size());
  std::size_t expected = 0;
  for (const auto& [node, community] : by_node) {
    if (node != expected) {
      throw ParseError(path.string() + ": missing label for node " + std::to_string(expected));
    }
    out.labels.push_back(community);
    ++expected;
  }
  return out;
}

void save_labels(const std::filesystem::path& path, const NodeLabels& labels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ' ' << labels[i] << '\n';
}

std::vector<std::string> load_name_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::map<std::size_t, std::string> names;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto fields = split_fields(strip_comment(raw));
    if (fields.empty()) continue;
    std::size_t node = 0;
    if (fields.size() < 2 || !parse_number(fields[0], node)) {
      throw ParseError(at_line(path, lineno) + "expected 'node_id name'");
    }
    // Names may contain spaces; keep the remainder of the line verbatim.
    const auto rest = raw.find(fields[1]);
    names[node] = strip_comment(raw.substr(rest));
    while (!names[node].empty() && std::isspace(static_cast<unsigned char>(names[node].back()))) {
      names[node].pop_back();
    }
  }
  std::vector<std::string> out;
  for (const auto& [node, name] : names) {
    if (node != out.size()) {
      throw ParseError(path.string() + ": missing name for node " + std::to_string(out.size()));
    }
    out.push_back(name);
  }
  return out;
}

Matrix degree_matrix(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("degree_matrix: not square (" + shape_of(a) + ")");
  Matrix d = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) d(i, i) = a.row(i).sum();
  return d;
}

Matrix normalized_laplacian(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("normalized_laplacian: not square (" + shape_of(a) + ")");
  }
  const Eigen::Index n = a.rows();
  Vector inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = a.row(i).sum();
    inv_sqrt[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Matrix lap(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double identity = (i == j && inv_sqrt[i] > 0.0) ? 1.0 : 0.0;
      lap(i, j) = identity - inv_sqrt[i] * a(i, j) * inv_sqrt[j];
    }
  }
  return lap;
}

Matrix aggregate_average(const MultiplexNetwork& net) {
  if (net.layer_count() == 0) throw DimensionError("aggregate_average: empty network");
  Matrix sum = net.layer(0);
  for (std::size_t l = 1; l < net.layer_count(); ++l) sum += net.layer(l);
  return sum / static_cast<double>(net.layer_count());
}

double edge_density(const Matrix& a) {
  const double n = static_cast<double>(a.rows());
  if (n < 2) return 0.0;
  return (a.sum() - a.trace()) / (n * (n - 1.0));
}

}  // namespace mxplex
