#include "lvt/markov.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "lvt/errors.hpp"

namespace lvt {

bool is_markov(const Integer& a, const Integer& b, const Integer& c) {
  if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0) return false;
  return a * a + b * b + c * c == 3 * a * b * c;
}

bool is_markov(const std::array<Integer, 3>& t) {
  return is_markov(t[0], t[1], t[2]);
}

MarkovTriple::MarkovTriple(Integer a, Integer b, Integer c)
    : entries_{std::move(a), std::move(b), std::move(c)} {
  if (!is_markov(entries_))
    throw InvalidTriple("not a Markov triple: " + to_string());
}

MarkovTriple::MarkovTriple(const std::array<Integer, 3>& entries)
    : MarkovTriple(entries[0], entries[1], entries[2]) {}

const Integer& MarkovTriple::max_entry() const {
  return *std::max_element(entries_.begin(), entries_.end());
}

MarkovTriple MarkovTriple::sorted() const {
  auto e = entries_;
  std::sort(e.begin(), e.end());
  return MarkovTriple(e);
}

bool MarkovTriple::is_root() const {
  return entries_[0] == 1 && entries_[1] == 1 && entries_[2] == 1;
}

std::string MarkovTriple::to_string() const {
  return entries_[0].get_str() + "," + entries_[1].get_str() + "," +
         entries_[2].get_str();
}

bool same_multiset(const MarkovTriple& l, const MarkovTriple& r) {
  return l.sorted() == r.sorted();
}

MarkovTriple mutate_triple(const MarkovTriple& t, int k) {
  if (k < 0 || k > 2) throw InvalidTriple("mutation index must be 0, 1 or 2");
  auto e = t.entries();
  const Integer& p = e[(k + 1) % 3];
  const Integer& q = e[(k + 2) % 3];
  e[k] = 3 * p * q - e[k];
  return MarkovTriple(e);
}

std::optional<MarkovTriple> parent_triple(const MarkovTriple& t) {
  if (t.is_root()) return std::nullopt;
  const Integer& top = t.max_entry();
  std::optional<MarkovTriple> parent;
  for (int k = 0; k < 3; ++k) {
    MarkovTriple m = mutate_triple(t, k);
    if (m.max_entry() < top) {
      // Exactly one jump decreases the maximum; for (1,1,2) the two
      // positions holding 1 both jump upwards.
      if (parent) throw InvalidTriple("two descending jumps from " + t.to_string());
      parent = m;
    }
  }
  if (!parent) throw InvalidTriple("no descending jump from " + t.to_string());
  return parent;
}

MarkovTriple replay_path(const std::vector<int>& path) {
  MarkovTriple t = MarkovTriple::root();
  for (int k : path) t = mutate_triple(t, k);
  return t;
}

std::vector<MarkovNode> enumerate_tree(const Integer& max_entry) {
  std::vector<MarkovNode> out;
  if (max_entry < 1) return out;
  std::set<MarkovTriple> seen;
  std::deque<MarkovNode> queue;
  MarkovNode root{MarkovTriple::root(), {}};
  seen.insert(root.triple.sorted());
  queue.push_back(root);
  while (!queue.empty()) {
    MarkovNode node = std::move(queue.front());
    queue.pop_front();
    for (int k = 0; k < 3; ++k) {
      MarkovTriple child = mutate_triple(node.triple, k);
      if (child.max_entry() > max_entry) continue;
      if (!seen.insert(child.sorted()).second) continue;
      MarkovNode next{child, node.path};
      next.path.push_back(k);
      queue.push_back(next);
    }
    out.push_back(std::move(node));
  }
  return out;
}

MarkovNode canonical_node(const MarkovTriple& t) {
  std::vector<MarkovTriple> chain;  // sorted triples from t down to the root
  std::optional<MarkovTriple> cur = t.sorted();
  while (cur) {
    chain.push_back(cur->sorted());
    cur = parent_triple(*cur);
  }
  std::reverse(chain.begin(), chain.end());

  MarkovNode node{MarkovTriple::root(), {}};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    bool advanced = false;
    for (int k = 0; k < 3 && !advanced; ++k) {
      MarkovTriple next = mutate_triple(node.triple, k);
      if (next.sorted() == chain[i]) {
        node.triple = next;
        node.path.push_back(k);
        advanced = true;
      }
    }
    if (!advanced) throw InvalidTriple("broken descent chain at " + chain[i].to_string());
  }
  return node;
}

MarkovTriple parse_triple(const std::string& text) {
  std::array<Integer, 3> e;
  std::stringstream ss(text);
  std::string item;
  std::size_t count = 0;
  while (std::getline(ss, item, ',')) {
    if (count == 3) throw InvalidTriple("expected three entries: " + text);
    if (item.empty() ||
        !std::all_of(item.begin(), item.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw InvalidTriple("malformed triple: " + text);
    e[count++] = Integer(item, 10);
  }
  if (count != 3) throw InvalidTriple("expected three entries: " + text);
  return MarkovTriple(e);
}

}  // namespace lvt
