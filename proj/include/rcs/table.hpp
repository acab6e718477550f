#pragma once

#include <map>
#include <stdexcept>

#include "rcs/composition.hpp"
#include "rcs/rational.hpp"

namespace rcs {

/// Probability table over compositions or partitions of a fixed n.
/// Entries absent from the map carry probability zero.
template <class S, class Key>
class DistributionTable {
 public:
  using map_type = std::map<Key, S>;

  DistributionTable() = default;
  DistributionTable(int n, map_type entries) : n_(n), entries_(std::move(entries)) {
    for (auto& [key, p] : entries_) {
      if (key.n() != n_) throw std::invalid_argument("table entry at wrong level");
      if (p < backend<S>::from_int(0)) throw std::invalid_argument("negative probability");
    }
  }

  static DistributionTable point_mass(const Key& key) {
    map_type m;
    m.emplace(key, backend<S>::from_int(1));
    return DistributionTable(key.n(), std::move(m));
  }

  int n() const { return n_; }
  const map_type& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  S at(const Key& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? backend<S>::from_int(0) : it->second;
  }

  S total() const {
    S t = backend<S>::from_int(0);
    for (auto& [key, p] : entries_) t += p;
    return t;
  }

  bool normalized() const { return backend<S>::close(total(), backend<S>::from_int(1)); }

  void add(const Key& key, const S& p) {
    auto [it, inserted] = entries_.emplace(key, p);
    if (!inserted) it->second += p;
  }

  bool operator==(const DistributionTable& other) const {
    if (n_ != other.n_) return false;
    for (auto& [key, p] : entries_)
      if (!backend<S>::close(p, other.at(key))) return false;
    for (auto& [key, p] : other.entries_)
      if (!backend<S>::close(p, at(key))) return false;
    return true;
  }

 private:
  int n_ = 0;
  map_type entries_;
};

template <class S>
using CompositionTable = DistributionTable<S, Composition>;
template <class S>
using PartitionTable = DistributionTable<S, Partition>;

/// (symm1): p(shape) = sum of p-circ over the distinct arrangements.
template <class S>
PartitionTable<S> symmetrize(const CompositionTable<S>& t) {
  typename PartitionTable<S>::map_type out;
  for (auto& [c, p] : t.entries()) {
    Partition key = c.shape();
    auto [it, inserted] = out.emplace(key, p);
    if (!inserted) it->second += p;
  }
  return PartitionTable<S>(t.n(), std::move(out));
}

namespace detail {

template <class S, class Table, class Key>
Table sb_reduce_impl(const Table& t) {
  typename Table::map_type out;
  for (auto& [key, p] : t.entries()) {
    if (key.empty()) {  // absorbing
      auto [it, ins] = out.emplace(key, p);
      if (!ins) it->second += p;
      continue;
    }
    const parts_t& parts = key.parts();
    int n = key.n();
    for (std::size_t j = 0; j < parts.size(); ++j) {
      parts_t reduced;
      reduced.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        int v = parts[i] - (i == j ? 1 : 0);
        if (v > 0) reduced.push_back(v);
      }
      S w = p * backend<S>::from_int(parts[j]) / backend<S>::from_int(n);
      Key nk(std::move(reduced));
      auto [it, ins] = out.emplace(nk, w);
      if (!ins) it->second += w;
    }
  }
  return Table(t.n() > 0 ? t.n() - 1 : 0, std::move(out));
}

}  // namespace detail

/// Exact pushforward of size-biased reduction (Def. 1): each part lambda_j is
/// reduced by one with probability lambda_j/n, emptied parts are deleted.
template <class S>
CompositionTable<S> sb_reduce_pushforward(const CompositionTable<S>& t) {
  return detail::sb_reduce_impl<S, CompositionTable<S>, Composition>(t);
}

template <class S>
PartitionTable<S> sb_reduce_pushforward(const PartitionTable<S>& t) {
  return detail::sb_reduce_impl<S, PartitionTable<S>, Partition>(t);
}

/// Law of the reversed composition (parts read right to left).
template <class S>
CompositionTable<S> reverse_pushforward(const CompositionTable<S>& t) {
  typename CompositionTable<S>::map_type out;
  for (auto& [c, p] : t.entries()) {
    Composition rev = c.reversed();
    auto [it, ins] = out.emplace(rev, p);
    if (!ins) it->second += p;
  }
  return CompositionTable<S>(t.n(), std::move(out));
}

/// Marginal of the first part F_n; index m-1 holds P(F_n = m).
template <class S>
std::vector<S> first_part_marginal(const CompositionTable<S>& t) {
  std::vector<S> out(t.n(), backend<S>::from_int(0));
  for (auto& [c, p] : t.entries())
    if (!c.empty()) out[c.parts().front() - 1] += p;
  return out;
}

template <class S>
std::vector<S> last_part_marginal(const CompositionTable<S>& t) {
  std::vector<S> out(t.n(), backend<S>::from_int(0));
  for (auto& [c, p] : t.entries())
    if (!c.empty()) out[c.parts().back() - 1] += p;
  return out;
}

}  // namespace rcs
