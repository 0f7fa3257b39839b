#include "garp/partition_state.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace garp {

UnitAssignment UnitAssignment::vertex(int k) {
  if (k < 1) throw std::invalid_argument("vertex label must be >= 1");
  return UnitAssignment{k, 0};
}

UnitAssignment UnitAssignment::edge(int k, int k_prime) {
  if (k < 1 || k_prime <= k)
    throw std::invalid_argument("edge label requires 1 <= k < k_prime");
  return UnitAssignment{k, k_prime};
}

GraphAlignedState GraphAlignedState::single_vertex(int n_units) {
  if (n_units < 1) throw std::invalid_argument("n_units must be >= 1");
  return from_assignments(std::vector<UnitAssignment>(n_units, UnitAssignment{1, 0}));
}

GraphAlignedState GraphAlignedState::all_detached(int n_units) {
  if (n_units < 1) throw std::invalid_argument("n_units must be >= 1");
  GraphAlignedState s;
  s.assignments_.assign(n_units, UnitAssignment::detached());
  return s;
}

GraphAlignedState GraphAlignedState::from_assignments(std::vector<UnitAssignment> assignments) {
  GraphAlignedState s;
  s.assignments_ = std::move(assignments);
  int max_vertex = 0;
  for (const auto& a : s.assignments_) {
    if (a.is_detached()) throw std::invalid_argument("from_assignments: detached unit");
    if (a.is_vertex()) max_vertex = std::max(max_vertex, a.k);
  }
  s.vertex_counts_.assign(max_vertex, 0);
  s.adjacent_units_.assign(max_vertex, 0);
  for (const auto& a : s.assignments_) {
    if (a.is_vertex()) {
      ++s.vertex_counts_[a.k - 1];
      ++s.n_v_;
    } else {
      ++s.edge_counts_[{a.k, a.k_prime}];
      if (a.k <= max_vertex) ++s.adjacent_units_[a.k - 1];
      if (a.k_prime <= max_vertex) ++s.adjacent_units_[a.k_prime - 1];
      ++s.n_e_;
    }
  }
  for (int c : s.vertex_counts_)
    if (c == 0) throw std::invalid_argument("from_assignments: vertex labels must be dense 1..K_v");
  return s;
}

const UnitAssignment& GraphAlignedState::assignment(int i) const {
  if (i < 0 || i >= n_units()) throw std::out_of_range("unit index out of range");
  return assignments_[i];
}

int GraphAlignedState::vertex_count(int k) const {
  if (k < 1 || k > k_v()) throw std::out_of_range("vertex label out of range");
  return vertex_counts_[k - 1];
}

int GraphAlignedState::edge_count(int k, int k_prime) const {
  auto it = edge_counts_.find({k, k_prime});
  return it == edge_counts_.end() ? 0 : it->second;
}

int GraphAlignedState::adjacent_edge_units(int k) const {
  if (k < 1 || k > k_v()) throw std::out_of_range("vertex label out of range");
  return adjacent_units_[k - 1];
}

bool GraphAlignedState::detach_blocked(int i) const {
  const UnitAssignment& a = assignment(i);
  if (!a.is_vertex()) return false;
  return vertex_counts_[a.k - 1] == 1 && adjacent_units_[a.k - 1] > 0;
}

void GraphAlignedState::remove_vertex_label(int k) {
  vertex_counts_.erase(vertex_counts_.begin() + (k - 1));
  adjacent_units_.erase(adjacent_units_.begin() + (k - 1));
  for (auto& a : assignments_) {
    if (a.is_vertex() && a.k > k) {
      --a.k;
    } else if (a.is_edge()) {
      if (a.k > k) --a.k;
      if (a.k_prime > k) --a.k_prime;
    }
  }
  std::map<EdgePair, int> remapped;
  for (const auto& [pair, count] : edge_counts_) {
    EdgePair p = pair;
    if (p.first > k) --p.first;
    if (p.second > k) --p.second;
    remapped[p] += count;
  }
  edge_counts_ = std::move(remapped);
}

DetachResult GraphAlignedState::detach(int i) {
  const UnitAssignment a = assignment(i);
  if (a.is_detached()) throw std::logic_error("detach: unit already detached");
  if (detach_blocked(i)) return DetachResult{true, 0};

  DetachResult result;
  if (a.is_vertex()) {
    --n_v_;
    if (--vertex_counts_[a.k - 1] == 0) {
      // I_i = 0, so the emptied vertex has no adjacent edge units and its
      // label is retired immediately.
      assignments_[i] = UnitAssignment::detached();
      remove_vertex_label(a.k);
      result.removed_vertex = a.k;
      return result;
    }
  } else {
    --n_e_;
    auto it = edge_counts_.find({a.k, a.k_prime});
    if (--it->second == 0) edge_counts_.erase(it);
    --adjacent_units_[a.k - 1];
    --adjacent_units_[a.k_prime - 1];
  }
  assignments_[i] = UnitAssignment::detached();
  return result;
}

void GraphAlignedState::attach(int i, UnitAssignment a) {
  if (!assignment(i).is_detached()) throw std::logic_error("attach: unit not detached");
  if (a.is_vertex()) {
    if (a.k > k_v() + 1) throw std::invalid_argument("attach: vertex label outside admissible set");
    if (a.k == k_v() + 1) {
      vertex_counts_.push_back(1);
      adjacent_units_.push_back(0);
    } else {
      ++vertex_counts_[a.k - 1];
    }
    ++n_v_;
  } else if (a.is_edge()) {
    if (a.k_prime > k_v())
      throw std::invalid_argument("attach: edge label outside admissible set");
    ++edge_counts_[{a.k, a.k_prime}];
    ++adjacent_units_[a.k - 1];
    ++adjacent_units_[a.k_prime - 1];
    ++n_e_;
  } else {
    throw std::invalid_argument("attach: detached label");
  }
  assignments_[i] = a;
}

RelabelResult GraphAlignedState::canonical_relabel() const {
  // New labels by first appearance of each vertex-cluster's own units over
  // i = 1..N (intrinsic, so jointly permuting labels cannot change the
  // result). Labels referenced only by edges (relaxed-model completeness
  // states) are numbered afterwards in reference order.
  const int max_label =
      std::max(k_v(), [&] {
        int m = 0;
        for (const auto& [pair, count] : edge_counts_)
          if (count > 0) m = std::max(m, pair.second);
        return m;
      }());
  std::vector<int> map(max_label, 0);
  int next = 0;
  auto touch = [&](int k) {
    if (map[k - 1] == 0) map[k - 1] = ++next;
  };
  for (const auto& a : assignments_)
    if (a.is_vertex()) touch(a.k);
  for (const auto& a : assignments_) {
    if (a.is_edge()) {
      touch(a.k);
      touch(a.k_prime);
    }
  }
  std::vector<UnitAssignment> relabeled;
  relabeled.reserve(assignments_.size());
  for (const auto& a : assignments_) {
    if (a.is_vertex()) {
      relabeled.push_back(UnitAssignment{map[a.k - 1], 0});
    } else if (a.is_edge()) {
      int x = map[a.k - 1];
      int y = map[a.k_prime - 1];
      if (x > y) std::swap(x, y);
      relabeled.push_back(UnitAssignment{x, y});
    } else {
      relabeled.push_back(a);
    }
  }
  RelabelResult out{from_assignments(std::move(relabeled)), std::move(map)};
  out.vertex_map.resize(k_v());
  return out;
}

void GraphAlignedState::check_consistent() const {
  std::vector<UnitAssignment> attached;
  for (const auto& a : assignments_)
    if (!a.is_detached()) attached.push_back(a);
  if (attached.empty()) {
    if (n_v_ != 0 || n_e_ != 0 || !vertex_counts_.empty() || !edge_counts_.empty())
      throw std::logic_error("state inconsistent: counts nonzero with no attached units");
    return;
  }
  GraphAlignedState rebuilt = from_assignments(attached);
  if (rebuilt.vertex_counts_ != vertex_counts_ || rebuilt.edge_counts_ != edge_counts_ ||
      rebuilt.n_v_ != n_v_ || rebuilt.n_e_ != n_e_ || rebuilt.adjacent_units_ != adjacent_units_)
    throw std::logic_error("state inconsistent: incremental counts differ from recomputation");
  if (n_v_ + n_e_ != static_cast<int>(attached.size()))
    throw std::logic_error("state inconsistent: N_v + N_e != N");
}

std::string GraphAlignedState::key() const {
  std::ostringstream os;
  for (const auto& a : assignments_) {
    if (a.is_vertex())
      os << 'v' << a.k << ';';
    else if (a.is_edge())
      os << 'e' << a.k << ',' << a.k_prime << ';';
    else
      os << "-;";
  }
  return os.str();
}

bool truncation_event_holds(const GraphAlignedState& state) {
  return state.n_e() == 0 || state.m_e() > 0;
}

}  // namespace garp
