#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hanoi/graph.hpp"
#include "hanoi/permutation.hpp"

namespace hanoi {

/// Disk number of position n >= 1: one plus the 2-adic valuation of n.
int disk_number(long n);

/// First N terms of 1, 2, 1, 3, 1, 2, 1, 4, ... by the closed form.
std::vector<int> disk_sequence(std::size_t N);
/// S_n = S_{n-1} (n) S_{n-1}, S_1 = (1); has 2^n - 1 terms.
std::vector<int> disk_sequence_recursive(int n);

/// Integer-line network. node i of `graph` sits at positions[i].
struct HanoiNetwork {
  WeightedGraph graph;
  std::vector<long> positions;
  std::vector<int> disks; // 0 for the origin of HN4

  std::size_t node_at(long position) const;
};

/// Nodes 1..N, backbone (n, n+1), and every jump between 2^{i-1}(4j+1) and
/// 2^{i-1}(4j+3) with both ends <= N (length 2^i, kind "jump").
HanoiNetwork build_hn3(long N);

/// Nodes -N..N: both mirrored HN3 halves, an edge from each node to the
/// nearest node of equal disk number on either side when not already a jump
/// (kind "nearest"), and a loop at 0.
HanoiNetwork build_hn4(long N);

using Point2 = std::array<double, 2>;

/// H_n: states x_1 ... x_n (x_1 = peg of the smallest disk), edges = legal
/// moves. Nodes are indexed with x_n most significant so that the states
/// with the largest disk on peg i form the i-th block of 3^{n-1}.
struct AutomatonNetwork {
  int n = 0;
  double edge_length = 0; // 1 / (2^n - 1)
  WeightedGraph graph;
  std::vector<Word> states;
  std::vector<Point2> coords; // planar embedding, unit distance 0^n to 1^n

  std::size_t index_of(const Word &w) const;
};

inline constexpr int max_automaton_level = 12;

AutomatonNetwork build_automaton_network(int n);

/// Collapsed-state label of an H_n state: the suffix starting at the last
/// letter 2, or the whole word when no disk sits on peg 2.
std::string collapsed_label(const Word &w);

/// H'_n, built recursively from two copies of H'_{n-1} and the node "2".
/// It has 2^{n+1} - 1 nodes; node labels are collapsed-state labels.
struct MinorNetwork {
  int n = 0;
  WeightedGraph graph; // node names are the labels
  std::vector<std::string> labels;
  std::vector<int> disk_numbers;
  std::vector<Point2> coords;
  /// blobs[v] = the H_n states (indices into build_automaton_network(n))
  /// collapsed into node v.
  std::vector<std::vector<std::size_t>> blobs;

  std::size_t index_of(const std::string &label) const;
};

MinorNetwork build_minor(int n);

/// HN3 position p in 1 .. 2^{n+1}-1 to the H'_n label of the matching node.
std::string correspondence_label(int n, long p);

/// Undirected simple-graph isomorphism search (loops and edge multiplicity
/// ignored): backtracking over a BFS order with degree and adjacency
/// pruning. Returns map[v1] = v2.
std::optional<std::vector<std::size_t>> find_isomorphism(const WeightedGraph &a, const WeightedGraph &b);
bool is_isomorphism(const WeightedGraph &a, const WeightedGraph &b,
                    const std::vector<std::size_t> &map);

struct IsomorphismResult {
  bool constructive = false; // correspondence_label preserves edges both ways
  bool kinds_match = false;  // backbone/jump kinds agree under the mapping
  bool oracle = false;       // independent backtracking search succeeded
  std::vector<std::size_t> mapping; // HN3 node -> H'_n node
  bool ok() const { return constructive && kinds_match && oracle; }
};

/// HN3 on 2^{n+1} - 1 nodes against H'_n.
IsomorphismResult verify_isomorphism(int n, bool run_oracle = true);

struct MinorCheck {
  bool partition = false;        // blobs cover every H_n state exactly once
  bool blobs_connected = false;  // each blob induces a connected subgraph
  bool edges_realized = false;   // every H'_n edge joins two touching blobs
  std::size_t deleted_edges = 0; // quotient edges absent from H'_n
  bool blob_sizes = false;       // a disk-number-d node collapses 3^{d-2} states
  bool ok() const { return partition && blobs_connected && edges_realized && blob_sizes; }
};

/// Contracts the blobs of H_n and compares the quotient with H'_n.
MinorCheck verify_minor(int n);

struct DistortionRow {
  long a = 0, b = 0; // HN3 positions
  std::string kind;
  double hn3_length = 0;
  long blob_hops = 0;           // H_n hops between the two blobs
  long representative_hops = 0; // H_n hops between blob representatives
  double ratio = 0;             // blob_hops * edge_length / hn3_length
};

struct DistortionReport {
  int n = 0;
  double edge_length = 0;
  std::vector<DistortionRow> rows;
  double min_ratio = 0;
  double bound = 0; // 2^{-n+1}
};

/// One row per edge of HN3 on 2^{n+1} - 1 nodes, measured inside H_n.
DistortionReport distortion_report(int n);

/// CSV with columns node,label,x,y.
std::string coordinates_csv(const WeightedGraph &g, const std::vector<Point2> &coords);

} // namespace hanoi
