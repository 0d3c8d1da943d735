#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lvt {

using Integer = mpz_class;

// Positive solution of a^2 + b^2 + c^2 = 3abc. The order of the entries is
// kept: mutation indices refer to positions.
class MarkovTriple {
 public:
  // Throws InvalidTriple unless the entries solve the Markov equation.
  MarkovTriple(Integer a, Integer b, Integer c);
  explicit MarkovTriple(const std::array<Integer, 3>& entries);

  static MarkovTriple root() { return MarkovTriple(1, 1, 1); }

  const Integer& operator[](std::size_t k) const { return entries_[k]; }
  const std::array<Integer, 3>& entries() const { return entries_; }

  const Integer& max_entry() const;
  MarkovTriple sorted() const;
  bool is_root() const;

  // "a,b,c" in the stored order.
  std::string to_string() const;

  friend bool operator==(const MarkovTriple& l, const MarkovTriple& r) {
    return l.entries_ == r.entries_;
  }
  friend bool operator<(const MarkovTriple& l, const MarkovTriple& r) {
    return l.entries_ < r.entries_;
  }

 private:
  std::array<Integer, 3> entries_;
};

// Multiset comparison.
bool same_multiset(const MarkovTriple& l, const MarkovTriple& r);

bool is_markov(const Integer& a, const Integer& b, const Integer& c);
bool is_markov(const std::array<Integer, 3>& t);

// Vieta jump at position k: entry k becomes 3 * (product of others) - entry k.
MarkovTriple mutate_triple(const MarkovTriple& t, int k);

// The neighbour with strictly smaller maximum; none for the root.
std::optional<MarkovTriple> parent_triple(const MarkovTriple& t);

struct MarkovNode {
  MarkovTriple triple;
  std::vector<int> path;  // mutation indices from (1,1,1)

  friend bool operator==(const MarkovNode&, const MarkovNode&) = default;
};

// Replays a mutation-index path from the root.
MarkovTriple replay_path(const std::vector<int>& path);

// Breadth-first enumeration of all triples with max entry <= max_entry,
// one node per sorted triple, carrying the shortest path that is smallest
// in lexicographic order.
std::vector<MarkovNode> enumerate_tree(const Integer& max_entry);

// The canonical node (same path as enumerate_tree would assign) for any
// ordering of t, computed by descending to the root.
MarkovNode canonical_node(const MarkovTriple& t);

// Parses "a,b,c"; throws InvalidTriple on malformed or non-Markov input.
MarkovTriple parse_triple(const std::string& text);

}  // namespace lvt
