#pragma once

// Shared test utilities: independent oracles and generators the tests
// compare the library against. Everything here is deliberately written
// the straightforward slow way, separate from the implementations under
// test.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aqp/config.hpp"
#include "aqp/feature_matrix.hpp"
#include "aqp/graph.hpp"
#include "aqp/node.hpp"
#include "aqp/nodes.hpp"
#include "aqp/store.hpp"

namespace aqp::test {

// ---------------------------------------------------------------------------
// filesystem helpers

/// Fresh scratch directory under the system temp dir; removed on
/// destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "test") {
    static std::atomic<std::uint64_t> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("aqp_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(
                 static_cast<std::uint64_t>(::getpid())));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------
// spec builders

inline NodeSpec make_spec(std::string id, std::string type,
                          std::vector<std::string> children = {},
                          Json params = Json::object()) {
  NodeSpec spec;
  spec.id = std::move(id);
  spec.node_type = std::move(type);
  spec.children = std::move(children);
  spec.params = std::move(params);
  return spec;
}

/// Inverse of deserialize, for the round-trip invariant. Produces the
/// documented file shape from specs.
inline Json serialize(const std::vector<NodeSpec>& specs) {
  Json doc = Json::object();
  for (const NodeSpec& spec : specs) {
    Json entry = Json::object();
    entry["type"] = spec.node_type;
    if (!spec.children.empty()) entry["children"] = spec.children;
    if (spec.output_key.has_value()) entry["output_key"] = *spec.output_key;
    if (!spec.draw_options.empty()) {
      Json draw = Json::object();
      for (const auto& [k, v] : spec.draw_options) draw[k] = v;
      entry["draw_options"] = draw;
    }
    for (const auto& [k, v] : spec.params.items()) entry[k] = v;
    doc[spec.id] = entry;
  }
  return doc;
}

// ---------------------------------------------------------------------------
// test node types

/// Node that always reports Halt, for pruning tests.
class HaltNode final : public Node {
 public:
  explicit HaltNode(NodeSpec spec) : Node(std::move(spec)) {}
  ExecStatus execute(ResultStore&) override { return ExecStatus::halt; }
};

/// Reads a number under "in" (param `in_key`, default "item") and writes
/// twice its value to the node's result key.
class DoubleNode final : public Node {
 public:
  explicit DoubleNode(NodeSpec spec) : Node(std::move(spec)) {}
  ExecStatus execute(ResultStore& store) override {
    const std::string key =
        spec().params.contains("in_key")
            ? spec().params.at("in_key").get<std::string>()
            : "item";
    store.set(result_key(), 2.0 * store.get<double>(key));
    return ExecStatus::proceed;
  }
};

/// Throws for a negative number under "item", for failure-path tests.
class FailNegativeNode final : public Node {
 public:
  explicit FailNegativeNode(NodeSpec spec) : Node(std::move(spec)) {}
  ExecStatus execute(ResultStore& store) override {
    const double item = store.get<double>("item");
    if (item < 0.0)
      throw Error(errc::bad_param, "negative item " + std::to_string(item));
    store.set(result_key(), item);
    return ExecStatus::proceed;
  }
};

/// Registry with the builtin catalog plus the test-only types above.
inline NodeRegistry test_registry() {
  NodeRegistry registry = NodeRegistry::with_builtins();
  registry.add("test_halt", [](const NodeSpec& spec, const NodeRegistry&) {
    return std::unique_ptr<Node>(new HaltNode(spec));
  });
  registry.add("test_double", [](const NodeSpec& spec, const NodeRegistry&) {
    return std::unique_ptr<Node>(new DoubleNode(spec));
  });
  registry.add("test_fail_negative",
               [](const NodeSpec& spec, const NodeRegistry&) {
                 return std::unique_ptr<Node>(new FailNegativeNode(spec));
               });
  return registry;
}

/// Observer capturing the visit sequence.
class RecordingObserver : public TraversalObserver {
 public:
  void on_visit(const Node& node, ExecStatus status) override {
    visited.push_back(node.id());
    statuses.push_back(status);
  }
  std::vector<std::string> visited;
  std::vector<ExecStatus> statuses;
};

// ---------------------------------------------------------------------------
// traversal oracle

/// Straight recursive depth-first preorder with Halt pruning and no
/// visited set: the reference semantics the iterative engine must match.
inline void preorder_oracle_visit(
    const std::map<std::string, const NodeSpec*>& by_id,
    const std::set<std::string>& halts, const std::string& id,
    std::vector<std::string>& out) {
  out.push_back(id);
  if (halts.count(id) != 0) return;
  for (const std::string& child : by_id.at(id)->children)
    preorder_oracle_visit(by_id, halts, child, out);
}

inline std::vector<std::string> preorder_oracle(
    const std::vector<NodeSpec>& specs, const std::set<std::string>& halts,
    const std::string& root) {
  std::map<std::string, const NodeSpec*> by_id;
  for (const NodeSpec& s : specs) by_id[s.id] = &s;
  std::vector<std::string> out;
  preorder_oracle_visit(by_id, halts, root, out);
  return out;
}

// ---------------------------------------------------------------------------
// random graph generators

struct RandomDag {
  std::vector<NodeSpec> specs;  // node i may only point at nodes > i
  std::set<std::string> halts;
  std::string root = "n0";
};

/// Random DAG over n0..n{k-1} with edges only from lower to higher
/// index. Out-degree is capped so diamond re-execution cannot blow up
/// the visit count.
inline RandomDag make_random_dag(std::mt19937_64& rng,
                                 std::size_t max_nodes = 20,
                                 double halt_prob = 0.2) {
  std::uniform_int_distribution<std::size_t> node_count(1, max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = node_count(rng);

  RandomDag dag;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "n" + std::to_string(i);
    std::vector<std::string> children;
    if (i + 1 < n) {
      std::vector<std::size_t> later(n - i - 1);
      std::iota(later.begin(), later.end(), i + 1);
      std::shuffle(later.begin(), later.end(), rng);
      std::uniform_int_distribution<std::size_t> degree(
          0, std::min<std::size_t>(2, later.size()));
      const std::size_t out_degree = degree(rng);
      for (std::size_t c = 0; c < out_degree; ++c)
        children.push_back("n" + std::to_string(later[c]));
    }
    const bool halt = unit(rng) < halt_prob;
    if (halt) dag.halts.insert(id);
    dag.specs.push_back(
        make_spec(id, halt ? "test_halt" : "identity", children));
  }
  return dag;
}

/// Spec map whose edges all point from lower to higher shuffled rank:
/// acyclic by construction.
inline std::vector<NodeSpec> make_random_acyclic(std::mt19937_64& rng,
                                                 std::size_t max_nodes = 12) {
  RandomDag dag = make_random_dag(rng, max_nodes, 0.0);
  return dag.specs;
}

/// Acyclic spec map plus a directed ring through random distinct nodes:
/// guaranteed to contain a cycle.
inline std::vector<NodeSpec> make_random_cyclic(std::mt19937_64& rng,
                                                std::size_t max_nodes = 12) {
  std::vector<NodeSpec> specs;
  while (specs.size() < 2) specs = make_random_acyclic(rng, max_nodes);
  std::vector<std::size_t> order(specs.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<std::size_t> ring_len(
      2, std::min<std::size_t>(specs.size(), 5));
  const std::size_t m = ring_len(rng);
  for (std::size_t i = 0; i < m; ++i) {
    NodeSpec& from = specs[order[i]];
    const std::string& to = specs[order[(i + 1) % m]].id;
    if (std::find(from.children.begin(), from.children.end(), to) ==
        from.children.end())
      from.children.push_back(to);
  }
  return specs;
}

/// True when `witness` is a closed walk through existing edges, i.e. an
/// actual cycle in the spec map.
inline bool witness_is_cycle(const std::vector<NodeSpec>& specs,
                             const std::vector<std::string>& witness) {
  if (witness.size() < 2 || witness.front() != witness.back()) return false;
  std::map<std::string, const NodeSpec*> by_id;
  for (const NodeSpec& s : specs) by_id[s.id] = &s;
  for (std::size_t i = 0; i + 1 < witness.size(); ++i) {
    auto it = by_id.find(witness[i]);
    if (it == by_id.end()) return false;
    const auto& ch = it->second->children;
    if (std::find(ch.begin(), ch.end(), witness[i + 1]) == ch.end())
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// DFT oracle

/// Direct O(n^2) DFT.
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * M_PI * static_cast<double>(k) *
                           static_cast<double>(t) / static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// SDTW oracle

/// Exhaustive enumeration of every monotone alignment path with free
/// start and end along the reference axis, replicating the documented
/// semantics: per endpoint, minimum accumulated cost with ties broken
/// to the shorter path; result is the minimum over endpoints of
/// cost / length.
class SdtwOracle {
 public:
  SdtwOracle(const FeatureMatrix& ref, const FeatureMatrix& patch)
      : ref_(ref), patch_(patch) {}

  double run() {
    const std::size_t n_ref = ref_.rows();
    best_.assign(n_ref, {std::numeric_limits<double>::infinity(), 0});
    for (std::size_t start = 0; start < n_ref; ++start)
      walk(0, start, local(0, start), 1);
    double score = std::numeric_limits<double>::infinity();
    for (const auto& [cost, len] : best_)
      if (std::isfinite(cost))
        score = std::min(score, cost / static_cast<double>(len));
    return score;
  }

 private:
  double local(std::size_t i, std::size_t j) const {
    double sum = 0.0;
    for (std::size_t c = 0; c < patch_.cols(); ++c) {
      const double d = patch_.at(i, c) - ref_.at(j, c);
      sum += d * d;
    }
    return std::sqrt(sum);
  }

  void walk(std::size_t i, std::size_t j, double cost, std::size_t len) {
    if (i + 1 == patch_.rows()) {
      auto& [best_cost, best_len] = best_[j];
      if (cost < best_cost || (cost == best_cost && len < best_len)) {
        best_cost = cost;
        best_len = len;
      }
    } else {
      if (j + 1 < ref_.rows())
        walk(i + 1, j + 1, cost + 2.0 * local(i + 1, j + 1), len + 1);
      walk(i + 1, j, cost + local(i + 1, j), len + 1);
    }
    if (j + 1 < ref_.rows())
      walk(i, j + 1, cost + local(i, j + 1), len + 1);
  }

  const FeatureMatrix& ref_;
  const FeatureMatrix& patch_;
  std::vector<std::pair<double, std::size_t>> best_;
};

inline double sdtw_oracle(const FeatureMatrix& ref,
                          const FeatureMatrix& patch) {
  return SdtwOracle(ref, patch).run();
}

inline FeatureMatrix random_features(std::mt19937_64& rng, std::size_t rows,
                                     std::size_t cols, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(-scale, scale);
  FeatureMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = unit(rng);
  return m;
}

// ---------------------------------------------------------------------------
// correlation oracles

/// Pearson in long double, two-pass.
inline double pearson_oracle(const std::vector<double>& x,
                             const std::vector<double>& y) {
  const std::size_t n = x.size();
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<long double>(n);
  my /= static_cast<long double>(n);
  long double sxy = 0.0L, sxx = 0.0L, syy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

/// Average ranks computed by brute force: rank of x[i] = number of
/// smaller elements + half the other equal elements + 1.
inline std::vector<double> ranks_oracle(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < x[i]) ++smaller;
      if (x[j] == x[i]) ++equal;
    }
    out[i] = static_cast<double>(smaller) +
             (static_cast<double>(equal - 1)) / 2.0 + 1.0;
  }
  return out;
}

inline double spearman_oracle(const std::vector<double>& x,
                              const std::vector<double>& y) {
  return pearson_oracle(ranks_oracle(x), ranks_oracle(y));
}

// ---------------------------------------------------------------------------
// DOT parser

struct ParsedDot {
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;
  bool ok = false;
};

namespace detail {

inline bool read_dot_id(const std::string& text, std::size_t& pos,
                        std::string& out) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(
                                  text[pos])))
    ++pos;
  if (pos >= text.size()) return false;
  out.clear();
  if (text[pos] == '"') {
    ++pos;
    while (pos < text.size() && text[pos] != '"') {
      if (text[pos] == '\\' && pos + 1 < text.size()) {
        ++pos;
        if (text[pos] == 'n')
          out += '\n';
        else
          out += text[pos];
      } else {
        out += text[pos];
      }
      ++pos;
    }
    if (pos >= text.size()) return false;
    ++pos;  // closing quote
    return true;
  }
  while (pos < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[pos])) ||
          text[pos] == '_')) {
    out += text[pos];
    ++pos;
  }
  return !out.empty();
}

}  // namespace detail

/// Line-oriented parser for the emitted subset of DOT: node statements,
/// edge statements, subgraph blocks. Graph-level structure is checked
/// (header, balanced braces); attribute lists are skipped.
inline ParsedDot parse_dot(const std::string& text) {
  ParsedDot dot;
  std::vector<std::string> lines;
  std::string line;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(line);
      line.clear();
    } else {
      line += c;
    }
  }
  if (!line.empty()) lines.push_back(line);

  if (lines.empty() || lines.front() != "digraph pipeline {") return dot;
  int depth = 1;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    std::string s = lines[ln];
    const std::size_t begin = s.find_first_not_of(' ');
    if (begin == std::string::npos) continue;
    s = s.substr(begin);
    if (s == "}") {
      --depth;
      if (depth < 0) return dot;
      continue;
    }
    if (s.rfind("subgraph ", 0) == 0) {
      if (s.back() != '{') return dot;
      ++depth;
      continue;
    }
    if (s.rfind("label=", 0) == 0) continue;
    std::size_t pos = 0;
    std::string id;
    if (!detail::read_dot_id(s, pos, id)) return dot;
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (s.compare(pos, 2, "->") == 0) {
      pos += 2;
      std::string target;
      if (!detail::read_dot_id(s, pos, target)) return dot;
      dot.edges.emplace(id, target);
    } else if (pos < s.size() && s[pos] == '[') {
      dot.nodes.insert(id);
    } else {
      return dot;
    }
  }
  dot.ok = depth == 0;
  return dot;
}

}  // namespace aqp::test
