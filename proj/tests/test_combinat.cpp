#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "rcs/composition.hpp"
#include "rcs/decrement.hpp"
#include "rcs/table.hpp"

using namespace rcs;

namespace {

// test-only oracle: enumerate all set partitions of [n] and count those whose
// multiset of block sizes equals the given shape
long long count_set_partitions_with_shape(const Partition& shape) {
  int n = shape.n();
  std::vector<int> ref = shape.parts();
  long long count = 0;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int next) {
    if (next == n) {
      std::vector<int> sizes;
      for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.size()));
      std::sort(sizes.begin(), sizes.end(), std::greater<int>());
      if (sizes == ref) ++count;
      return;
    }
    std::size_t existing = blocks.size();  // recursion may reallocate `blocks`
    for (std::size_t i = 0; i < existing; ++i) {
      blocks[i].push_back(next);
      rec(next + 1);
      blocks[i].pop_back();
    }
    blocks.push_back({next});
    rec(next + 1);
    blocks.pop_back();
  };
  rec(0);
  return count;
}

}  // namespace

TEST_CASE("binary codes") {
  CHECK(Composition({3, 1, 2}).code() == "100110");
  CHECK(Composition({1}).code() == "1");
  CHECK(Composition({1, 1, 1}).code() == "111");
  CHECK(Composition::from_code("100110") == Composition({3, 1, 2}));
  // round trip over the full enumeration
  for (int n = 1; n <= 8; ++n)
    for (const Composition& c : enumerate_compositions(n))
      CHECK(Composition::from_code(c.code()) == c);
  CHECK_THROWS(Composition::from_code("010"));
}

TEST_CASE("counting functions") {
  CHECK(multinomial_count(Composition({3, 1, 2})) == 60);
  CHECK(multinomial_count(Composition({7})) == 1);
  CHECK(multinomial_count(Composition({1, 1, 1, 1})) == 24);

  CHECK(shape_count(Partition({2, 1, 1})) == 6);
  CHECK(shape_count(Partition({5})) == 1);
  CHECK(shape_count(Partition({2, 2})) == 3);
  for (int n = 1; n <= 6; ++n)
    for (const Partition& lam : enumerate_partitions(n))
      CHECK(shape_count(lam) == count_set_partitions_with_shape(lam));
}

TEST_CASE("enumeration") {
  auto c3 = enumerate_compositions(3);
  REQUIRE(c3.size() == 4);
  CHECK(c3[0] == Composition({3}));
  CHECK(c3[1] == Composition({2, 1}));
  CHECK(c3[2] == Composition({1, 2}));
  CHECK(c3[3] == Composition({1, 1, 1}));

  CHECK(enumerate_compositions(1).size() == 1);
  CHECK(enumerate_compositions(4).size() == 8);
  CHECK(enumerate_partitions(4).size() == 5);
  for (int n = 1; n <= 12; ++n)
    CHECK(enumerate_compositions(n).size() == (std::size_t(1) << (n - 1)));

  // deterministic binary-code lexicographic order, no duplicates
  for (int n = 1; n <= 7; ++n) {
    auto list = enumerate_compositions(n);
    std::set<std::string> codes;
    for (const auto& c : list) codes.insert(c.code());
    CHECK(codes.size() == list.size());
    CHECK(std::is_sorted(list.begin(), list.end(),
                         [](const Composition& a, const Composition& b) { return a < b; }));
    for (std::size_t i = 0; i + 1 < list.size(); ++i)
      CHECK(list[i].code() < list[i + 1].code());
  }

  CHECK_THROWS(enumerate_compositions(21));
  CHECK_NOTHROW(enumerate_compositions(5, 22));
}

TEST_CASE("composition and partition basics") {
  Composition c({3, 1, 2});
  CHECK(c.n() == 6);
  CHECK(c.k() == 3);
  CHECK(c.str() == "3,1,2");
  CHECK(Composition::parse("3,1,2") == c);
  CHECK(c.reversed() == Composition({2, 1, 3}));
  CHECK(c.shape() == Partition({3, 2, 1}));
  CHECK_THROWS(Composition::parse("3,0,2"));

  Partition lam({1, 4, 2, 2});
  CHECK(lam.parts() == parts_t({4, 2, 2, 1}));
  CHECK(lam.multiplicity(2) == 2);
  CHECK(lam.remove_part(2) == Partition({4, 2, 1}));
  CHECK_THROWS(lam.remove_part(3));
  CHECK(Composition().empty());
  CHECK(Composition().n() == 0);
}

TEST_CASE("symmetrize") {
  DecrementMatrix<Rat> q = DecrementMatrix<Rat>::ewens(Rat(1), 3);
  CompositionTable<Rat> t = cpf_table(q, 3);
  CHECK(t.at(Composition({1, 2})) == Rat(1, 6));
  CHECK(t.at(Composition({2, 1})) == Rat(1, 3));
  PartitionTable<Rat> sym = symmetrize(t);
  CHECK(sym.at(Partition({2, 1})) == Rat(1, 2));
  CHECK(sym.total() == 1);

  auto point = CompositionTable<Rat>::point_mass(Composition({4}));
  CHECK(symmetrize(point).at(Partition({4})) == 1);

  // uniform over compositions of 3
  typename CompositionTable<Rat>::map_type m;
  for (const Composition& c : enumerate_compositions(3)) m.emplace(c, Rat(1, 4));
  PartitionTable<Rat> u = symmetrize(CompositionTable<Rat>(3, std::move(m)));
  CHECK(u.at(Partition({2, 1})) == Rat(1, 2));
  CHECK(u.at(Partition({3})) == Rat(1, 4));
  CHECK(u.at(Partition({1, 1, 1})) == Rat(1, 4));
}

TEST_CASE("symmetrize of the uniform labeled table reproduces k! f") {
  // p(shape) proportional to (number of arrangements) * f-circ = k! f(shape)
  for (int n = 2; n <= 6; ++n) {
    typename CompositionTable<Rat>::map_type m;
    Rat total = 0;
    for (const Composition& c : enumerate_compositions(n)) {
      Rat w(multinomial_count(c));
      m.emplace(c, w);
      total += w;
    }
    for (auto& [key, v] : m) v /= total;
    PartitionTable<Rat> sym = symmetrize(CompositionTable<Rat>(n, std::move(m)));
    for (const auto& [lam, p] : sym.entries()) {
      Rat expect = Rat(big_factorial(lam.k()) * shape_count(lam)) / Rat(total);
      CHECK(p == expect);
    }
  }
}

TEST_CASE("size-biased reduction pushforward") {
  auto point2 = CompositionTable<Rat>::point_mass(Composition({2}));
  CHECK(sb_reduce_pushforward(point2).at(Composition({1})) == 1);
  auto point11 = CompositionTable<Rat>::point_mass(Composition({1, 1}));
  CHECK(sb_reduce_pushforward(point11).at(Composition({1})) == 1);

  DecrementMatrix<Rat> q = DecrementMatrix<Rat>::ewens(Rat(1), 3);
  CompositionTable<Rat> reduced = sb_reduce_pushforward(cpf_table(q, 3));
  CHECK(reduced.at(Composition({2})) == Rat(1, 2));
  CHECK(reduced.at(Composition({1, 1})) == Rat(1, 2));
  CHECK(reduced == cpf_table(q, 2));
}

TEST_CASE("reverse pushforward and end-part marginals") {
  DecrementMatrix<Rat> q = DecrementMatrix<Rat>::ewens(Rat(1), 3);
  CompositionTable<Rat> t = cpf_table(q, 3);
  auto first = first_part_marginal(t);
  CHECK(first == std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  auto last = last_part_marginal(t);
  CHECK(last == std::vector<Rat>{Rat(1, 2), Rat(1, 6), Rat(1, 3)});
  CompositionTable<Rat> rev = reverse_pushforward(t);
  CHECK(first_part_marginal(rev) == last);

  // symmetric table (exchangeable arrangement): reversal is invariant
  DecrementMatrix<Rat> aa = DecrementMatrix<Rat>::two_param(Rat(1, 2), Rat(1, 2), 6);
  for (int n = 1; n <= 6; ++n) {
    CompositionTable<Rat> table = cpf_table(aa, n);
    CHECK(reverse_pushforward(table) == table);
  }
}

TEST_CASE("empty composition is absorbing") {
  auto t = CompositionTable<Rat>::point_mass(Composition());
  CHECK(sb_reduce_pushforward(t).at(Composition()) == 1);
}
