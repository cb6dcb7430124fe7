#pragma once

#include <cassert>
#include <numeric>
#include <optional>
#include <utility>

#include "basewalk/core.hpp"

namespace basewalk {

enum class MatroidKind { Uniform, Partition, Graphic };

namespace detail {

// Plain union-find, rebuilt per rank query. Instances are desk-scale so
// clarity wins over incremental caching.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true when the union merged two distinct components.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// Rank-queryable matroid over a dense ground set [0, m). Immutable after
// construction; all queries are pure.
class Matroid {
 public:
  // Empty uniform matroid; placeholder state for default-constructed holders.
  Matroid() = default;

  static Matroid Uniform(int m, int k) {
    if (m < 0 || k < 0 || k > m)
      throw InvalidInputError("uniform matroid requires 0 <= k <= m");
    Matroid mat;
    mat.kind_ = MatroidKind::Uniform;
    mat.m_ = m;
    mat.k_ = k;
    mat.rank_ = k;
    return mat;
  }

  static Matroid Partition(std::vector<int> part_of,
                           std::vector<int> capacity) {
    Matroid mat;
    mat.kind_ = MatroidKind::Partition;
    mat.m_ = static_cast<int>(part_of.size());
    mat.part_of_ = std::move(part_of);
    mat.capacity_ = std::move(capacity);
    std::vector<int> count(mat.capacity_.size(), 0);
    for (int p : mat.part_of_) {
      if (p < 0 || p >= static_cast<int>(mat.capacity_.size()))
        throw InvalidInputError("partition id out of range");
      ++count[p];
    }
    for (int cap : mat.capacity_)
      if (cap < 0) throw InvalidInputError("negative part capacity");
    int r = 0;
    for (std::size_t j = 0; j < count.size(); ++j)
      r += std::min(count[j], mat.capacity_[j]);
    mat.rank_ = r;
    return mat;
  }

  static Matroid Graphic(int num_vertices,
                         std::vector<std::pair<int, int>> edges) {
    Matroid mat;
    mat.kind_ = MatroidKind::Graphic;
    mat.m_ = static_cast<int>(edges.size());
    mat.num_vertices_ = num_vertices;
    mat.edges_ = std::move(edges);
    for (auto [u, v] : mat.edges_)
      if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices)
        throw InvalidInputError("edge endpoint out of range");
    ElementSet all(mat.m_);
    std::iota(all.begin(), all.end(), 0);
    mat.rank_ = mat.rank_unchecked(all);
    return mat;
  }

  MatroidKind kind() const { return kind_; }
  int size() const { return m_; }
  int rank() const { return rank_; }

  // Variant accessors used by the structured separation routines.
  int uniform_k() const { return k_; }
  const std::vector<int>& part_of() const { return part_of_; }
  const std::vector<int>& capacities() const { return capacity_; }
  int num_vertices() const { return num_vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int rank_of(const ElementSet& s) const {
    check_elements(s);
    return rank_unchecked(s);
  }

  // Dual matroid rank r*(S) = r(E\S) + |S| - r(E).
  int dual_rank(const ElementSet& s) const {
    check_elements(s);
    ElementSet rest = complement(s);
    return rank_unchecked(rest) + static_cast<int>(s.size()) - rank_;
  }

  bool is_independent(const ElementSet& s) const {
    return rank_of(s) == static_cast<int>(s.size());
  }

  bool is_spanning(const ElementSet& s) const { return rank_of(s) == rank_; }

  // All e with rank(S + e) = rank(S); always a superset of S.
  ElementSet span_of(const ElementSet& s) const {
    int base_rank = rank_of(s);
    ElementSet out;
    for (ElementId e = 0; e < m_; ++e) {
      if (contains(s, e)) {
        out.push_back(e);
        continue;
      }
      ElementSet ext = s;
      ext.insert(std::lower_bound(ext.begin(), ext.end(), e), e);
      if (rank_unchecked(ext) == base_rank) out.push_back(e);
    }
    return out;
  }

  // Extends independent I (subset of avail) to a base of avail by scanning
  // avail in ascending id order. Deterministic.
  ElementSet extend_to_base(const ElementSet& indep,
                            const ElementSet& avail) const {
    if (!is_subset(indep, avail))
      throw InvalidInputError("extend_to_base: I must be contained in S");
    if (!is_spanning(avail))
      throw InfeasibleError("extend_to_base: available set does not span");
    if (!is_independent(indep))
      throw InvalidInputError("extend_to_base: I is not independent");
    ElementSet base = indep;
    int cur = static_cast<int>(base.size());
    for (ElementId e : avail) {
      if (cur == rank_) break;
      if (contains(base, e)) continue;
      ElementSet ext = base;
      ext.insert(std::lower_bound(ext.begin(), ext.end(), e), e);
      if (rank_unchecked(ext) == cur + 1) {
        base = std::move(ext);
        ++cur;
      }
    }
    return base;
  }

  // Greedy min-weight base over avail; ties broken by ascending id.
  ElementSet min_weight_base(const std::vector<Cost>& w,
                             const ElementSet& avail) const {
    if (static_cast<int>(w.size()) != m_)
      throw InvalidInputError("min_weight_base: weight vector size mismatch");
    if (!is_spanning(avail))
      throw InfeasibleError("min_weight_base: available set does not span");
    ElementSet order = avail;
    std::stable_sort(order.begin(), order.end(),
                     [&](ElementId a, ElementId b) { return w[a] < w[b]; });
    ElementSet base;
    int cur = 0;
    for (ElementId e : order) {
      if (cur == rank_) break;
      ElementSet ext = base;
      ext.insert(std::lower_bound(ext.begin(), ext.end(), e), e);
      if (rank_unchecked(ext) == cur + 1) {
        base = std::move(ext);
        ++cur;
      }
    }
    return base;
  }

  // All bases of the restriction to avail, in lexicographic id order.
  // Aborts with a resource error once more than cap bases are found.
  std::vector<ElementSet> enumerate_bases(const ElementSet& avail,
                                          std::size_t cap) const {
    if (cap < 1) throw InvalidInputError("enumerate_bases: cap must be >= 1");
    if (!is_spanning(avail))
      throw InfeasibleError("enumerate_bases: available set does not span");
    std::vector<ElementSet> out;
    ElementSet current;
    enumerate_rec(avail, 0, current, cap, out);
    return out;
  }

  ElementSet ground_set() const {
    ElementSet all(m_);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }

 private:
  void check_elements(const ElementSet& s) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= m_)
        throw InvalidInputError("element index out of range");
      if (i > 0 && s[i] <= s[i - 1])
        throw InvalidInputError("element set must be sorted and unique");
    }
  }

  ElementSet complement(const ElementSet& s) const {
    ElementSet out;
    out.reserve(m_ - s.size());
    std::size_t j = 0;
    for (ElementId e = 0; e < m_; ++e) {
      if (j < s.size() && s[j] == e) {
        ++j;
      } else {
        out.push_back(e);
      }
    }
    return out;
  }

  int rank_unchecked(const ElementSet& s) const {
    switch (kind_) {
      case MatroidKind::Uniform:
        return std::min<int>(static_cast<int>(s.size()), k_);
      case MatroidKind::Partition: {
        std::vector<int> count(capacity_.size(), 0);
        for (ElementId e : s) ++count[part_of_[e]];
        int r = 0;
        for (std::size_t j = 0; j < count.size(); ++j)
          r += std::min(count[j], capacity_[j]);
        return r;
      }
      case MatroidKind::Graphic: {
        detail::UnionFind uf(num_vertices_);
        int merges = 0;
        for (ElementId e : s)
          if (uf.unite(edges_[e].first, edges_[e].second)) ++merges;
        return merges;  // n - (number of components)
      }
    }
    throw InternalError("unreachable matroid kind");
  }

  void enumerate_rec(const ElementSet& avail, std::size_t start,
                     ElementSet& current, std::size_t cap,
                     std::vector<ElementSet>& out) const {
    if (static_cast<int>(current.size()) == rank_) {
      if (out.size() >= cap)
        throw ResourceLimitError("enumerate_bases: base count exceeds cap");
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < avail.size(); ++i) {
      ElementId e = avail[i];
      current.push_back(e);
      if (rank_unchecked(current) == static_cast<int>(current.size())) {
        // Prune branches that cannot reach full rank with the remainder.
        ElementSet rest = current;
        rest.insert(rest.end(), avail.begin() + i + 1, avail.end());
        if (rank_unchecked(rest) == rank_)
          enumerate_rec(avail, i + 1, current, cap, out);
      }
      current.pop_back();
    }
  }

  MatroidKind kind_ = MatroidKind::Uniform;
  int m_ = 0;
  int rank_ = 0;
  // uniform
  int k_ = 0;
  // partition
  std::vector<int> part_of_;
  std::vector<int> capacity_;
  // graphic
  int num_vertices_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace basewalk
