#include "rcs/composition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace rcs {

namespace {

parts_t parse_parts(const std::string& text) {
  parts_t parts;
  if (text.empty()) return parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size() || v <= 0)
      throw std::invalid_argument("bad part '" + item + "' in \"" + text + "\"");
    parts.push_back(v);
  }
  return parts;
}

std::string join_parts(const parts_t& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts[i]);
  }
  return out;
}

}  // namespace

Composition::Composition(parts_t parts) : parts_(std::move(parts)) {
  long long total = 0;
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("composition parts must be positive");
    total += p;
  }
  if (total > std::numeric_limits<int>::max())
    throw std::invalid_argument("composition too large");
  n_ = static_cast<int>(total);
}

Composition Composition::from_code(const std::string& bits) {
  if (bits.empty()) return Composition();
  if (bits[0] != '1') throw std::invalid_argument("code must start with 1: " + bits);
  parts_t parts;
  for (char c : bits) {
    if (c == '1')
      parts.push_back(1);
    else if (c == '0')
      ++parts.back();
    else
      throw std::invalid_argument("code must be binary: " + bits);
  }
  return Composition(std::move(parts));
}

Composition Composition::parse(const std::string& text) {
  return Composition(parse_parts(text));
}

std::string Composition::code() const {
  std::string out;
  out.reserve(n_);
  for (int p : parts_) {
    out += '1';
    out.append(p - 1, '0');
  }
  return out;
}

std::string Composition::str() const { return join_parts(parts_); }

Composition Composition::reversed() const {
  parts_t rev(parts_.rbegin(), parts_.rend());
  return Composition(std::move(rev));
}

Partition Composition::shape() const { return Partition(parts_); }

bool Composition::operator<(const Composition& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  std::size_t m = std::min(parts_.size(), other.parts_.size());
  for (std::size_t i = 0; i < m; ++i)
    if (parts_[i] != other.parts_[i]) return parts_[i] > other.parts_[i];
  return parts_.size() < other.parts_.size();
}

Partition::Partition(parts_t parts) : parts_(std::move(parts)) {
  long long total = 0;
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("partition parts must be positive");
    total += p;
  }
  if (total > std::numeric_limits<int>::max())
    throw std::invalid_argument("partition too large");
  n_ = static_cast<int>(total);
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

Partition Partition::parse(const std::string& text) {
  return Partition(parse_parts(text));
}

int Partition::multiplicity(int r) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), r));
}

std::vector<int> Partition::distinct_parts() const {
  std::vector<int> out;
  for (int p : parts_)
    if (out.empty() || out.back() != p) out.push_back(p);
  return out;
}

Partition Partition::remove_part(int m) const {
  auto it = std::find(parts_.begin(), parts_.end(), m);
  if (it == parts_.end())
    throw std::invalid_argument("part " + std::to_string(m) + " not in " + str());
  parts_t rest;
  rest.reserve(parts_.size() - 1);
  rest.insert(rest.end(), parts_.begin(), it);
  rest.insert(rest.end(), std::next(it), parts_.end());
  Partition out;
  out.parts_ = std::move(rest);
  out.n_ = n_ - m;
  return out;
}

std::string Partition::str() const { return join_parts(parts_); }

bool Partition::operator<(const Partition& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  std::size_t m = std::min(parts_.size(), other.parts_.size());
  for (std::size_t i = 0; i < m; ++i)
    if (parts_[i] != other.parts_[i]) return parts_[i] > other.parts_[i];
  return parts_.size() < other.parts_.size();
}

BigInt multinomial_count(const Composition& c) {
  BigInt r = big_factorial(c.n());
  for (int p : c.parts()) r /= big_factorial(p);
  return r;
}

BigInt shape_count(const Partition& p) {
  BigInt r = big_factorial(p.n());
  int run = 0;
  const parts_t& parts = p.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    r /= big_factorial(parts[i]);
    ++run;
    if (i + 1 == parts.size() || parts[i + 1] != parts[i]) {
      r /= big_factorial(run);
      run = 0;
    }
  }
  return r;
}

namespace {

void check_cap(int n, int cap) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (n > cap)
    throw std::invalid_argument("enumeration of n=" + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap) +
                                " (raise the cap explicitly to override)");
}

}  // namespace

std::vector<Composition> enumerate_compositions(int n, int cap) {
  check_cap(n, cap);
  std::vector<Composition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  out.reserve(std::size_t(1) << (n - 1));
  parts_t cur;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) {
      out.push_back(Composition(cur));
      return;
    }
    for (int first = rem; first >= 1; --first) {  // larger first part = earlier code
      cur.push_back(first);
      rec(rem - first);
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

std::vector<Partition> enumerate_partitions(int n, int cap) {
  check_cap(n, cap);
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  parts_t cur;
  std::function<void(int, int)> rec = [&](int rem, int maxp) {
    if (rem == 0) {
      out.push_back(Partition(cur));
      return;
    }
    for (int first = std::min(rem, maxp); first >= 1; --first) {
      cur.push_back(first);
      rec(rem - first, first);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

}  // namespace rcs
