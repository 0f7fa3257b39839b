#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace garp {

// Cluster label of one unit: a vertex k >= 1, or an edge between the
// vertices k < k_prime. k == 0 marks a transiently detached unit.
struct UnitAssignment {
  int k = 0;
  int k_prime = 0;

  static UnitAssignment vertex(int k);
  static UnitAssignment edge(int k, int k_prime);
  static UnitAssignment detached() { return UnitAssignment{}; }

  bool is_vertex() const { return k > 0 && k_prime == 0; }
  bool is_edge() const { return k_prime > 0; }
  bool is_detached() const { return k == 0; }

  friend auto operator<=>(const UnitAssignment&, const UnitAssignment&) = default;
};

using EdgePair = std::pair<int, int>;

struct DetachResult {
  bool blocked = false;    // I_i = 1: removal would strand an edge-cluster
  int removed_vertex = 0;  // vertex label erased by compaction, 0 if none
};

struct RelabelResult;

// Graph-aligned partition of N units with incrementally maintained counts
// (n_k, n_{k,k'}, N_v, N_e, K_v). Vertex labels are dense 1..K_v; edge counts
// are stored sparsely. Value-semantic, so independent chains can each own a
// copy. attach/detach keep the state inside the support of the model; states
// built via from_assignments may carry the relaxed completeness label (1,2)
// with K_v < 2, which truncation_event_holds reports as false.
class GraphAlignedState {
 public:
  GraphAlignedState() = default;

  // All N units in one vertex-cluster.
  static GraphAlignedState single_vertex(int n_units);
  // All N units detached; callers attach them one by one.
  static GraphAlignedState all_detached(int n_units);
  static GraphAlignedState from_assignments(std::vector<UnitAssignment> assignments);

  int n_units() const { return static_cast<int>(assignments_.size()); }
  int n_v() const { return n_v_; }
  int n_e() const { return n_e_; }
  int k_v() const { return static_cast<int>(vertex_counts_.size()); }
  long m_e() const { return static_cast<long>(k_v()) * (k_v() - 1) / 2; }

  const UnitAssignment& assignment(int i) const;
  const std::vector<UnitAssignment>& assignments() const { return assignments_; }
  int vertex_count(int k) const;
  std::span<const int> vertex_counts() const { return vertex_counts_; }
  int edge_count(int k, int k_prime) const;
  const std::map<EdgePair, int>& edge_counts() const { return edge_counts_; }
  // Number of edge units adjacent to vertex k.
  int adjacent_edge_units(int k) const;

  // I_i without mutating.
  bool detach_blocked(int i) const;
  // Removes unit i; labels are compacted if a vertex empties. No mutation
  // when blocked.
  DetachResult detach(int i);
  // Attaches a detached unit. Admissible labels: an existing vertex, the new
  // vertex K_v+1, or an edge (k,k') with k < k' <= K_v.
  void attach(int i, UnitAssignment a);

  RelabelResult canonical_relabel() const;

  // Recomputes every count from the assignment vector and throws
  // std::logic_error on any mismatch with the incremental bookkeeping.
  void check_consistent() const;

  // Compact text key (used for enumeration tables and state comparison).
  std::string key() const;

  friend bool operator==(const GraphAlignedState&, const GraphAlignedState&) = default;

 private:
  std::vector<UnitAssignment> assignments_;
  std::vector<int> vertex_counts_;   // n_k, index k-1
  std::vector<int> adjacent_units_;  // edge units touching vertex k, index k-1
  std::map<EdgePair, int> edge_counts_;
  int n_v_ = 0;
  int n_e_ = 0;

  void remove_vertex_label(int k);
};

struct RelabelResult {
  GraphAlignedState state;
  std::vector<int> vertex_map;  // old label k -> vertex_map[k-1] (new label)
};

// E_N = {N_e = 0} u {M_e > 0}.
bool truncation_event_holds(const GraphAlignedState& state);

}  // namespace garp
