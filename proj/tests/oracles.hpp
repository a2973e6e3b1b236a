#pragma once

// Independent reference computations used by the tests. None of these go
// through stabilizer chains; they work on explicit element sets.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wreathkit/perm.hpp"

namespace oracle {

using wreathkit::Permutation;
using wreathkit::PermutationHash;
using ElementSet = std::unordered_set<Permutation, PermutationHash>;

// Fewest transpositions with product p, by breadth-first search from the
// identity over the Cayley graph with all transpositions as generators.
inline std::unordered_map<Permutation, std::size_t, PermutationHash> transposition_distances(std::size_t n) {
  std::vector<Permutation> transpositions;
  for (wreathkit::Point a = 0; a < n; ++a) {
    for (wreathkit::Point b = a + 1; b < n; ++b) transpositions.push_back(wreathkit::transposition(n, a, b));
  }
  std::unordered_map<Permutation, std::size_t, PermutationHash> dist;
  std::deque<Permutation> queue;
  dist[Permutation(n)] = 0;
  queue.push_back(Permutation(n));
  while (!queue.empty()) {
    Permutation p = queue.front();
    queue.pop_front();
    const std::size_t d = dist[p];
    for (const auto& t : transpositions) {
      Permutation q = p * t;
      if (dist.emplace(q, d + 1).second) queue.push_back(std::move(q));
    }
  }
  return dist;
}

// All permutations of degree n in lexicographic order of images.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<wreathkit::Point> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<wreathkit::Point>(i);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Closure of `gens` under multiplication.
inline ElementSet generate(const std::vector<Permutation>& gens, std::size_t degree) {
  ElementSet seen{Permutation(degree)};
  std::vector<Permutation> frontier{Permutation(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Permutation y = x * g;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

// Smallest subset of `group` containing the seeds and closed under products
// and under conjugation by every element of `group`.
inline ElementSet normal_closure(const ElementSet& group, const std::vector<Permutation>& seeds,
                                 std::size_t degree) {
  std::vector<Permutation> conjugates;
  ElementSet conj_seen;
  for (const auto& s : seeds) {
    for (const auto& g : group) {
      Permutation c = wreathkit::conjugate(s, g);
      if (conj_seen.insert(c).second) conjugates.push_back(std::move(c));
    }
  }
  return generate(conjugates, degree);
}

inline std::vector<std::vector<Permutation>> conjugacy_classes(const ElementSet& group) {
  std::vector<Permutation> sorted(group.begin(), group.end());
  std::sort(sorted.begin(), sorted.end());
  ElementSet done;
  std::vector<std::vector<Permutation>> classes;
  for (const auto& x : sorted) {
    if (done.count(x)) continue;
    std::set<Permutation> cls;
    for (const auto& g : group) cls.insert(wreathkit::conjugate(x, g));
    for (const auto& y : cls) done.insert(y);
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

// Normal subgroups found as unions of conjugacy classes that contain the
// identity, have size dividing |G| and are closed under multiplication.
// Returns the sorted list of their orders.
inline std::vector<std::size_t> normal_subgroup_orders(const ElementSet& group) {
  auto classes = conjugacy_classes(group);
  const std::size_t order = group.size();
  std::size_t identity_class = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].size() == 1 && classes[c][0].is_identity()) identity_class = c;
  }
  std::vector<std::size_t> others;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (c != identity_class) others.push_back(c);
  }
  std::vector<std::size_t> orders;
  std::vector<bool> chosen(classes.size(), false);
  chosen[identity_class] = true;

  auto closed = [&]() {
    ElementSet members;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (chosen[c]) members.insert(classes[c].begin(), classes[c].end());
    }
    // closure under products of class representatives with members suffices
    // for a union of classes: x*y in N for all x, y in N.
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (!chosen[c]) continue;
      const Permutation& rep = classes[c][0];
      for (const auto& y : members) {
        if (!members.count(rep * y)) return false;
      }
    }
    return true;
  };

  // depth-first over the non-identity classes with a size bound
  auto search = [&](auto&& self, std::size_t i, std::size_t size) -> void {
    if (size > order) return;
    if (i == others.size()) {
      if (order % size == 0 && closed()) orders.push_back(size);
      return;
    }
    self(self, i + 1, size);
    chosen[others[i]] = true;
    self(self, i + 1, size + classes[others[i]].size());
    chosen[others[i]] = false;
  };
  search(search, 0, 1);
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace oracle
