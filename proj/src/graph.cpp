#include "resco/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "resco/error.hpp"
#include "resco/rng.hpp"

namespace resco {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Range: return "range error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Contract: return "contract error";
    case ErrorKind::Size: return "size error";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Config: return "config error";
    case ErrorKind::State: return "state error";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : adjacency_(n) {
  for (auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw Error(ErrorKind::Range, "edge (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ") has a node id >= n = " +
                                        std::to_string(n));
    }
    if (a == b) {
      throw Error(ErrorKind::Validation, "self-loop on node " + std::to_string(a));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw Error(ErrorKind::Validation, "duplicate edge (" + std::to_string(dup->first) +
                                           ", " + std::to_string(dup->second) + ")");
  }
  for (const auto& [a, b] : edges) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  edges_ = std::move(edges);
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a >= num_nodes() || b >= num_nodes()) return false;
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

namespace {

struct DataLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
  std::uint64_t value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  }
  return value;
}

NodeId to_node(std::uint64_t v, std::size_t line) {
  if (v > std::numeric_limits<NodeId>::max() - 1) {
    throw ParseError(line, "node id too large");
  }
  return static_cast<NodeId>(v);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::vector<DataLine> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto tokens = split_ws(raw);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) {
      throw ParseError(number, "expected two node ids, got " +
                                   std::to_string(tokens.size()) + " fields");
    }
    lines.push_back({number, std::move(tokens)});
  }
  if (lines.empty()) return Graph(0, {});

  std::size_t first_edge = 0;
  std::optional<std::uint64_t> header_n;
  {
    const auto& head = lines.front();
    const auto n = parse_uint(head.tokens[0], head.number);
    const auto m = parse_uint(head.tokens[1], head.number);
    if (m == lines.size() - 1) {
      header_n = n;
      first_edge = 1;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(lines.size() - first_edge);
  std::uint64_t max_id = 0;
  for (std::size_t k = first_edge; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto a = parse_uint(line.tokens[0], line.number);
    const auto b = parse_uint(line.tokens[1], line.number);
    if (header_n && (a >= *header_n || b >= *header_n)) {
      throw Error(ErrorKind::Range, "line " + std::to_string(line.number) +
                                        ": node id out of range for n = " +
                                        std::to_string(*header_n) +
                                        " (first data line read as an 'n m' header)");
    }
    max_id = std::max({max_id, a, b});
    edges.emplace_back(to_node(a, line.number), to_node(b, line.number));
  }
  const std::size_t n =
      header_n ? static_cast<std::size_t>(*header_n)
               : (edges.empty() ? 0 : static_cast<std::size_t>(max_id) + 1);
  return Graph(n, std::move(edges));
}

Graph parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  std::string raw;
  std::size_t number = 0;
  std::optional<std::uint64_t> n;
  std::uint64_t declared_m = 0;
  std::size_t edge_lines = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++number;
    auto tokens = split_ws(raw);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (n) throw ParseError(number, "second problem line");
      if (tokens.size() != 4) throw ParseError(number, "expected 'p edge <n> <m>'");
      n = parse_uint(tokens[2], number);
      declared_m = parse_uint(tokens[3], number);
    } else if (tokens[0] == "e") {
      if (!n) throw ParseError(number, "edge line before the 'p' problem line");
      if (tokens.size() != 3) throw ParseError(number, "expected 'e <i> <j>'");
      const auto a = parse_uint(tokens[1], number);
      const auto b = parse_uint(tokens[2], number);
      if (a < 1 || b < 1 || a > *n || b > *n) {
        throw Error(ErrorKind::Range, "line " + std::to_string(number) +
                                          ": node id outside [1, " + std::to_string(*n) +
                                          "]");
      }
      if (a == b) {
        throw Error(ErrorKind::Validation,
                    "line " + std::to_string(number) + ": self-loop");
      }
      NodeId u = to_node(a - 1, number);
      NodeId v = to_node(b - 1, number);
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
      ++edge_lines;
    } else {
      throw ParseError(number, "unknown line type '" + tokens[0] + "'");
    }
  }
  if (!n) throw ParseError(number, "missing 'p edge' problem line");
  if (edge_lines != declared_m && warnings) {
    warnings->push_back("declared " + std::to_string(declared_m) + " edges, found " +
                        std::to_string(edge_lines) + " edge lines");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(static_cast<std::size_t>(*n), std::move(edges));
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

void write_dimacs(const Graph& g, std::ostream& out) {
  out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& [a, b] : g.edges()) out << "e " << a + 1 << ' ' << b + 1 << '\n';
}

GraphFormat format_from_name(const std::string& name) {
  if (name == "edgelist" || name == "edge-list") return GraphFormat::EdgeList;
  if (name == "dimacs") return GraphFormat::Dimacs;
  throw Error(ErrorKind::Parameter, "unknown graph format '" + name + "'");
}

GraphFormat format_from_path(const std::string& path) {
  for (const char* ext : {".dimacs", ".col", ".clq"}) {
    const std::string e(ext);
    if (path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0) {
      return GraphFormat::Dimacs;
    }
  }
  return GraphFormat::EdgeList;
}

Graph load_graph(const std::string& path, GraphFormat format,
                 std::vector<std::string>* warnings) {
  auto parse = [&](std::istream& in) {
    return format == GraphFormat::Dimacs ? parse_dimacs(in, warnings)
                                         : parse_edge_list(in);
  };
  if (path == "-") return parse(std::cin);
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::Io, "cannot open graph file '" + path + "'");
  return parse(file);
}

Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::Parameter, "edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.emplace_back(NodeId(i), NodeId(j));
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) {
    throw Error(ErrorKind::Parameter, "Barabasi-Albert requires 1 <= m < n");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m + m * (n - m - 1));
  // Every edge endpoint appears once here, so a uniform pick is degree-weighted.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * (m + m * (n - m - 1)));
  for (std::size_t leaf = 1; leaf <= m; ++leaf) {
    edges.emplace_back(0, NodeId(leaf));
    endpoints.push_back(0);
    endpoints.push_back(NodeId(leaf));
  }
  std::vector<NodeId> targets;
  for (std::size_t v = m + 1; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId pick = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, NodeId(v));
      endpoints.push_back(t);
      endpoints.push_back(NodeId(v));
    }
  }
  return Graph(n, std::move(edges));
}

Graph complement(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<Edge> edges;
  edges.reserve(n * (n - (n > 0 ? 1 : 0)) / 2 - g.num_edges());
  for (NodeId i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    auto it = std::upper_bound(nb.begin(), nb.end(), i);
    for (NodeId j = i + 1; j < n; ++j) {
      if (it != nb.end() && *it == j) {
        ++it;
        continue;
      }
      edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

std::size_t count_components(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack;
  std::size_t components = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

}  // namespace resco
