#pragma once

#include <compare>
#include <string>
#include <vector>

#include "rcs/rational.hpp"

namespace rcs {

using parts_t = std::vector<int>;

class Partition;

/// Ordered sequence of positive integer parts. The empty composition (n = 0)
/// represents the terminated chain and is absorbing under all pushforwards.
class Composition {
 public:
  Composition() = default;
  explicit Composition(parts_t parts);

  static Composition from_code(const std::string& bits);
  static Composition parse(const std::string& text);  // "3,1,2"

  const parts_t& parts() const { return parts_; }
  int n() const { return n_; }
  int k() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  std::string code() const;  // binary encoding, one '1' + (m-1) '0's per part
  std::string str() const;

  Composition reversed() const;
  Partition shape() const;

  bool operator==(const Composition&) const = default;
  // Tables and enumerations order compositions of equal n lexicographically
  // by binary code; at the first differing index the larger part sorts first.
  bool operator<(const Composition& other) const;

 private:
  parts_t parts_;
  int n_ = 0;
};

/// Multiset of parts, kept sorted nonincreasing.
class Partition {
 public:
  Partition() = default;
  explicit Partition(parts_t parts);  // any order; gets ranked

  static Partition parse(const std::string& text);

  const parts_t& parts() const { return parts_; }
  int n() const { return n_; }
  int k() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  int multiplicity(int r) const;
  std::vector<int> distinct_parts() const;
  Partition remove_part(int m) const;  // erase one copy of part m

  std::string str() const;

  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& other) const;

 private:
  parts_t parts_;
  int n_ = 0;
};

/// f-circ: number of ordered set partitions of [n] with this shape, n!/prod(lambda_j!).
BigInt multinomial_count(const Composition& c);

/// f: number of set partitions of [n] with this shape, n! prod 1/((r!)^{k_r} k_r!).
BigInt shape_count(const Partition& p);

inline constexpr int kEnumerationCap = 20;

/// All 2^{n-1} compositions of n in binary-code lexicographic order.
std::vector<Composition> enumerate_compositions(int n, int cap = kEnumerationCap);

/// All partitions of n, ranked parts in lexicographically decreasing order.
std::vector<Partition> enumerate_partitions(int n, int cap = kEnumerationCap);

}  // namespace rcs
