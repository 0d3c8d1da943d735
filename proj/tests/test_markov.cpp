#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "lvt/errors.hpp"
#include "lvt/markov.hpp"

using namespace lvt;

namespace {

using Sorted = std::array<long, 3>;

// Independent oracle: every sorted solution with entries up to the bound.
std::set<Sorted> brute_force_triples(long bound) {
  std::set<Sorted> out;
  for (long a = 1; a <= bound; ++a)
    for (long b = a; b <= bound; ++b)
      for (long c = b; c <= bound; ++c)
        if (a * a + b * b + c * c == 3 * a * b * c) out.insert({a, b, c});
  return out;
}

std::set<Sorted> sorted_set(const std::vector<MarkovNode>& nodes) {
  std::set<Sorted> out;
  for (const auto& n : nodes) {
    auto s = n.triple.sorted();
    out.insert({s[0].get_si(), s[1].get_si(), s[2].get_si()});
  }
  return out;
}

}  // namespace

TEST_CASE("is_markov examples") {
  CHECK(is_markov(1, 1, 1));
  CHECK(is_markov(1, 2, 5));
  CHECK_FALSE(is_markov(1, 2, 3));
  CHECK_FALSE(is_markov(0, 0, 0));
  CHECK_FALSE(is_markov(-1, -1, 1));
  CHECK_THROWS_AS(MarkovTriple(1, 2, 3), InvalidTriple);
}

TEST_CASE("mutate_triple examples") {
  CHECK(mutate_triple(MarkovTriple::root(), 2) == MarkovTriple(1, 1, 2));
  CHECK(mutate_triple(MarkovTriple(1, 1, 2), 0) == MarkovTriple(5, 1, 2));
  for (const auto& node : enumerate_tree(433))
    for (int k = 0; k < 3; ++k) CHECK(mutate_triple(mutate_triple(node.triple, k), k) == node.triple);
  CHECK_THROWS_AS(mutate_triple(MarkovTriple::root(), 3), InvalidTriple);
}

TEST_CASE("parent_triple examples") {
  CHECK(same_multiset(*parent_triple(MarkovTriple(1, 2, 5)), MarkovTriple(1, 1, 2)));
  CHECK_FALSE(parent_triple(MarkovTriple::root()).has_value());
  CHECK(same_multiset(*parent_triple(MarkovTriple(5, 1, 2)), MarkovTriple(1, 1, 2)));
  // (1,1,2) and its permutations descend to the root.
  CHECK(*parent_triple(MarkovTriple(1, 2, 1)) == MarkovTriple::root());
}

TEST_CASE("enumerate_tree examples") {
  CHECK(sorted_set(enumerate_tree(2)) == std::set<Sorted>{{1, 1, 1}, {1, 1, 2}});
  CHECK(sorted_set(enumerate_tree(13)) ==
        std::set<Sorted>{{1, 1, 1}, {1, 1, 2}, {1, 2, 5}, {1, 5, 13}});
  CHECK(sorted_set(enumerate_tree(1)) == std::set<Sorted>{{1, 1, 1}});
  CHECK(enumerate_tree(0).empty());
}

TEST_CASE("enumeration matches a brute-force search") {
  for (long bound : {1L, 5L, 34L, 200L, 433L}) CHECK(sorted_set(enumerate_tree(bound)) == brute_force_triples(bound));
  // The complete list below 433 has eleven members.
  CHECK(enumerate_tree(433).size() == 11);
}

TEST_CASE("enumerated nodes: paths, parents, canonical form") {
  const auto nodes = enumerate_tree(100000);
  std::size_t prev_len = 0;
  for (const auto& node : nodes) {
    CHECK(is_markov(node.triple.entries()));
    CHECK(replay_path(node.path) == node.triple);
    CHECK(node.path.size() >= prev_len);  // breadth-first order
    prev_len = node.path.size();
    if (!node.path.empty()) {
      auto shorter = node.path;
      shorter.pop_back();
      CHECK(same_multiset(*parent_triple(node.triple), replay_path(shorter)));
    }
    // canonical_node agrees for every ordering of the triple.
    auto e = node.triple.entries();
    std::sort(e.begin(), e.end());
    do {
      CHECK(canonical_node(MarkovTriple(e)) == node);
    } while (std::next_permutation(e.begin(), e.end()));
  }
}

TEST_CASE("canonical path is the shortest, then lexicographically smallest") {
  // Oracle: breadth-first search over ordered triples, recording every
  // shortest path per sorted triple.
  const long bound = 2000;
  std::map<Sorted, std::vector<int>> best;
  std::vector<std::pair<MarkovTriple, std::vector<int>>> frontier{{MarkovTriple::root(), {}}};
  while (!frontier.empty()) {
    std::vector<std::pair<MarkovTriple, std::vector<int>>> next;
    std::map<Sorted, std::vector<int>> level;
    for (auto& [t, path] : frontier) {
      auto s = t.sorted();
      Sorted key{s[0].get_si(), s[1].get_si(), s[2].get_si()};
      if (best.count(key)) continue;
      auto it = level.find(key);
      if (it == level.end() || path < it->second) level[key] = path;
    }
    for (auto& [key, path] : level) {
      best[key] = path;
      MarkovTriple t = replay_path(path);
      for (int k = 0; k < 3; ++k) {
        auto c = mutate_triple(t, k);
        if (c.max_entry() > bound) continue;
        auto p = path;
        p.push_back(k);
        next.emplace_back(c, p);
      }
    }
    frontier = std::move(next);
  }
  const auto nodes = enumerate_tree(bound);
  REQUIRE(nodes.size() == best.size());
  for (const auto& node : nodes) {
    auto s = node.triple.sorted();
    CHECK(best.at({s[0].get_si(), s[1].get_si(), s[2].get_si()}) == node.path);
  }
}

TEST_CASE("enumeration is monotone in the bound") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    long b1 = 1 + static_cast<long>(rng() % 3000), b2 = b1 + static_cast<long>(rng() % 3000);
    auto small = sorted_set(enumerate_tree(b1)), large = sorted_set(enumerate_tree(b2));
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("big entries do not overflow") {
  auto nodes = enumerate_tree(Integer("1000000000000000000000000000000"));
  const auto& last = nodes.back();
  CHECK(last.triple.max_entry() > Integer("1000000000000000000"));
  CHECK(is_markov(last.triple.entries()));
}

TEST_CASE("parse_triple") {
  CHECK(parse_triple("1,2,5") == MarkovTriple(1, 2, 5));
  CHECK(parse_triple("5,1,2") == MarkovTriple(5, 1, 2));
  CHECK_THROWS_AS(parse_triple("1,2"), InvalidTriple);
  CHECK_THROWS_AS(parse_triple("1,2,3"), InvalidTriple);
  CHECK_THROWS_AS(parse_triple("a,b,c"), InvalidTriple);
  CHECK_THROWS_AS(parse_triple("1,1,1,1"), InvalidTriple);
}
