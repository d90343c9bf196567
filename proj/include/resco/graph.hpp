#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace resco {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph on dense 0-based node ids. Immutable after
/// construction. Edges are stored normalized (first < second) and sorted;
/// neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// Throws Validation on self-loops or duplicate edges, Range on ids >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  bool has_edge(NodeId a, NodeId b) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_nodes() == b.num_nodes() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Plain edge list. Lines starting with '#' are comments, blank lines are
/// skipped. If the first data line is "n m" and exactly m data lines follow,
/// it is a header; otherwise n = 1 + max id.
Graph parse_edge_list(std::istream& in);

/// DIMACS "p edge n m" / "e i j" with 1-based ids. Duplicate edges (in either
/// orientation) are merged. A count mismatch against m is reported through
/// `warnings` (if given) and is not fatal.
Graph parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);

void write_edge_list(const Graph& g, std::ostream& out);
void write_dimacs(const Graph& g, std::ostream& out);

enum class GraphFormat { EdgeList, Dimacs };

GraphFormat format_from_name(const std::string& name);
/// Guess from the file extension: .dimacs/.col/.clq are DIMACS, anything else
/// is an edge list.
GraphFormat format_from_path(const std::string& path);

/// Reads from `path`, or standard input when path is "-".
Graph load_graph(const std::string& path, GraphFormat format,
                 std::vector<std::string>* warnings = nullptr);

/// G(n, p): each of the n(n-1)/2 pairs (i, j), i < j, visited in
/// lexicographic order and kept when rng.uniform() < p.
Graph gen_er(std::size_t n, double p, std::uint64_t seed);

/// Barabasi-Albert preferential attachment. Starts from a star centred on
/// node 0 over nodes 0..m; every later node draws m distinct targets with
/// probability proportional to degree (repeated draws, duplicates discarded).
Graph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed);

Graph complement(const Graph& g);

/// Number of connected components (0 for the empty graph).
std::size_t count_components(const Graph& g);

}  // namespace resco
