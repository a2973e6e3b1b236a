#pragma once

// Permutation groups given by generators, backed by a stabilizer chain.
//
// Chain operations (order, membership, normal closure, derived subgroup)
// scale to groups of astronomically large order. Operations that walk every
// element (center, conjugacy classes, the normal-subgroup lattice,
// intersections, brute-force normalizers) are gated by an element limit.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wreathkit/error.hpp"
#include "wreathkit/perm.hpp"
#include "wreathkit/random.hpp"

namespace wreathkit {

using Order = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

inline std::string to_string(const Order& n) { return n.str(); }

// Base and strong generating set computed by the deterministic Schreier-Sims
// algorithm. Base points are chosen as the smallest point moved by the new
// strong generator; transversals are explicit and built breadth-first.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  struct SiftResult {
    Permutation residue;
    std::size_t level;  // first level where sifting stopped; length() if it ran through
  };

  std::size_t degree() const noexcept { return degree_; }
  std::size_t length() const noexcept { return levels_.size(); }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& level : levels_) b.push_back(level.base_point);
    return b;
  }

  std::size_t orbit_size(std::size_t level) const { return levels_[level].orbit.size(); }

  const std::vector<Permutation>& strong_generators(std::size_t level) const {
    return levels_[level].generators;
  }

  Order order() const {
    Order n = 1;
    for (const auto& level : levels_) n *= level.orbit.size();
    return n;
  }

  SiftResult sift(Permutation g, std::size_t from = 0) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level& level = levels_[i];
      const Point image = g(level.base_point);
      const std::int32_t slot = level.slot[image];
      if (slot < 0) return {std::move(g), i};
      g = g * level.transversal_inverse[static_cast<std::size_t>(slot)];
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) throw Error("degree mismatch");
    return sift(g).residue.is_identity();
  }

  // Adds g to the group. Returns false when g was already a member.
  bool extend(const Permutation& g) {
    if (g.degree() != degree_) throw Error("degree mismatch");
    auto [residue, depth] = sift(g);
    if (residue.is_identity()) return false;
    add_strong_generator(residue, 0, depth);
    complete(depth);
    return true;
  }

  // Mixed-radix coordinates through the chain give a bijection between the
  // group and [0, order). Only meaningful when the order fits in 64 bits.
  Permutation element_at(std::uint64_t index) const {
    Permutation g(degree_);
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const auto size = levels_[i].orbit.size();
      const auto coordinate = static_cast<std::size_t>(index % size);
      index /= size;
      g = levels_[i].transversal[coordinate] * g;
    }
    return g;
  }

  std::uint64_t index_of(const Permutation& element) const {
    std::uint64_t index = 0;
    std::uint64_t radix = 1;
    Permutation g = element;
    for (const auto& level : levels_) {
      const std::int32_t slot = level.slot[g(level.base_point)];
      if (slot < 0) throw Error("element outside group");
      index += radix * static_cast<std::uint64_t>(slot);
      radix *= level.orbit.size();
      g = g * level.transversal_inverse[static_cast<std::size_t>(slot)];
    }
    if (!g.is_identity()) throw Error("element outside group");
    return index;
  }

  // Uniformly distributed element: independent uniform coordinates.
  Permutation random_element(Rng& rng) const {
    Permutation g(degree_);
    for (const auto& level : levels_) {
      const auto k = static_cast<std::size_t>(uniform_below(rng, level.orbit.size()));
      g = level.transversal[k] * g;
    }
    return g;
  }

 private:
  struct Level {
    Point base_point = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::int32_t> slot;  // point -> position in orbit, -1 if absent
    std::vector<Permutation> transversal;          // maps base_point to orbit[k]
    std::vector<Permutation> transversal_inverse;
  };

  void rebuild_orbit(Level& level) const {
    level.orbit.assign(1, level.base_point);
    level.slot.assign(degree_, -1);
    level.slot[level.base_point] = 0;
    level.transversal.assign(1, Permutation(degree_));
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
      const Point beta = level.orbit[k];
      for (const auto& s : level.generators) {
        const Point gamma = s(beta);
        if (level.slot[gamma] >= 0) continue;
        level.slot[gamma] = static_cast<std::int32_t>(level.orbit.size());
        level.orbit.push_back(gamma);
        level.transversal.push_back(level.transversal[k] * s);
      }
    }
    level.transversal_inverse.clear();
    for (const auto& u : level.transversal) level.transversal_inverse.push_back(u.inverse());
  }

  // r fixes the base points of levels [0, to); install it on levels [from, to],
  // appending a new level when to == length().
  void add_strong_generator(const Permutation& r, std::size_t from, std::size_t to) {
    if (to == levels_.size()) {
      Level level;
      level.base_point = static_cast<Point>(r.first_moved_point());
      levels_.push_back(std::move(level));
    }
    for (std::size_t i = from; i <= to; ++i) {
      levels_[i].generators.push_back(r);
      rebuild_orbit(levels_[i]);
    }
  }

  // Restores the chain property on levels [0, start] assuming deeper levels
  // are already complete.
  void complete(std::size_t start) {
    if (levels_.empty()) return;
    std::size_t i = std::min(start, levels_.size() - 1);
    while (true) {
      if (auto depth = first_missing_schreier_generator(i)) {
        i = *depth;
        continue;
      }
      if (i == 0) break;
      --i;
    }
  }

  // Sifts the Schreier generators of level i. The first one that does not
  // sift through is installed, and the level it dropped out at is returned.
  std::optional<std::size_t> first_missing_schreier_generator(std::size_t i) {
    const Level& level = levels_[i];
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
      for (const auto& gen : level.generators) {
        const auto target = static_cast<std::size_t>(level.slot[gen(level.orbit[k])]);
        Permutation schreier = level.transversal[k] * gen * level.transversal_inverse[target];
        if (schreier.is_identity()) continue;
        auto [residue, depth] = sift(std::move(schreier), i + 1);
        if (residue.is_identity()) continue;
        add_strong_generator(residue, i + 1, depth);
        return depth;
      }
    }
    return std::nullopt;
  }

  std::size_t degree_;
  std::vector<Level> levels_;
};

class Group {
 public:
  // The trivial group of the given degree.
  static Group trivial(std::size_t degree) {
    Group g;
    g.degree_ = degree;
    g.chain_ = std::make_shared<const StabilizerChain>(degree);
    return g;
  }

  // Throws on an empty list or on generators of differing degrees.
  explicit Group(const std::vector<Permutation>& generators) {
    if (generators.empty()) throw Error("empty generator list");
    degree_ = generators.front().degree();
    StabilizerChain chain(degree_);
    for (const auto& g : generators) {
      if (g.degree() != degree_) throw Error("degree mismatch");
      if (g.is_identity()) continue;
      generators_.push_back(g);
      chain.extend(g);
    }
    chain_ = std::make_shared<const StabilizerChain>(std::move(chain));
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const StabilizerChain& chain() const noexcept { return *chain_; }
  Order order() const { return chain_->order(); }
  bool is_trivial() const { return chain_->length() == 0; }

  bool contains(const Permutation& g) const { return chain_->contains(g); }

  // Subgroup test by generator membership.
  bool contains(const Group& h) const {
    if (h.degree() != degree_) throw Error("degree mismatch");
    return std::all_of(h.generators().begin(), h.generators().end(),
                       [&](const Permutation& g) { return contains(g); });
  }

  // Same set of elements.
  friend bool same_group(const Group& a, const Group& b) {
    return a.order() == b.order() && a.contains(b);
  }

  // Order as a 64-bit count, throwing when it exceeds `limit`.
  std::uint64_t enumerable_order(std::uint64_t limit) const {
    const Order n = order();
    if (n > limit) throw LimitExceeded();
    return static_cast<std::uint64_t>(n);
  }

  Permutation element_at(std::uint64_t index) const { return chain_->element_at(index); }
  std::uint64_t index_of(const Permutation& g) const { return chain_->index_of(g); }
  Permutation random_element(Rng& rng) const { return chain_->random_element(rng); }

 private:
  friend class GroupBuilder;
  Group() = default;

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<const StabilizerChain> chain_;
};

// Grows a group one generator at a time, keeping only generators that
// enlarge it.
class GroupBuilder {
 public:
  explicit GroupBuilder(std::size_t degree) : degree_(degree), chain_(degree) {}

  bool add(const Permutation& g) {
    if (g.degree() != degree_) throw Error("degree mismatch");
    if (!chain_.extend(g)) return false;
    generators_.push_back(g);
    return true;
  }

  bool contains(const Permutation& g) const { return chain_.contains(g); }
  Order order() const { return chain_.order(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  Group build() const {
    Group g;
    g.degree_ = degree_;
    g.generators_ = generators_;
    g.chain_ = std::make_shared<const StabilizerChain>(chain_);
    return g;
  }

 private:
  std::size_t degree_;
  StabilizerChain chain_;
  std::vector<Permutation> generators_;
};

inline Group build_group(const std::vector<Permutation>& generators) { return Group(generators); }

inline bool contains(const Group& g, const Permutation& x) { return g.contains(x); }

// Smallest normal subgroup of `ambient` containing every seed.
inline Group normal_closure(const Group& ambient, const std::vector<Permutation>& seeds) {
  GroupBuilder closure(ambient.degree());
  std::vector<Permutation> queue;
  for (const auto& s : seeds) {
    if (s.degree() != ambient.degree()) throw Error("degree mismatch");
    if (!ambient.contains(s)) throw Error("seed outside ambient group");
    if (closure.add(s)) queue.push_back(s);
  }
  // Closing the generating set under conjugation by the ambient generators is
  // enough: each conjugation permutes a finite group.
  for (std::size_t next = 0; next < queue.size(); ++next) {
    for (const auto& g : ambient.generators()) {
      Permutation c = conjugate(queue[next], g);
      if (closure.add(c)) queue.push_back(std::move(c));
    }
  }
  return closure.build();
}

inline bool is_normal(const Group& ambient, const Group& sub) {
  if (!ambient.contains(sub)) throw Error("not a subgroup of the ambient group");
  for (const auto& h : sub.generators()) {
    for (const auto& g : ambient.generators()) {
      if (!sub.contains(conjugate(h, g))) return false;
    }
  }
  return true;
}

inline Group derived_subgroup(const Group& g) {
  std::vector<Permutation> seeds;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator(gens[i], gens[j]);
      if (!c.is_identity()) seeds.push_back(std::move(c));
    }
  }
  return normal_closure(g, seeds);
}

// Subgroup generated by the elements of `g` accepted by `keep`.
template <class Pred>
Group filter_subgroup(const Group& g, std::uint64_t limit, Pred keep) {
  const std::uint64_t n = g.enumerable_order(limit);
  GroupBuilder builder(g.degree());
  for (std::uint64_t i = 0; i < n; ++i) {
    Permutation x = g.element_at(i);
    if (builder.contains(x)) continue;
    if (keep(x)) builder.add(x);
  }
  return builder.build();
}

inline Group center(const Group& g, std::uint64_t limit = kDefaultEnumerationLimit) {
  return filter_subgroup(g, limit, [&](const Permutation& x) {
    return std::all_of(g.generators().begin(), g.generators().end(),
                       [&](const Permutation& s) { return x * s == s * x; });
  });
}

inline Group intersect(const Group& a, const Group& b, const Group& ambient,
                       std::uint64_t limit = kDefaultEnumerationLimit) {
  ambient.enumerable_order(limit);
  if (!ambient.contains(a) || !ambient.contains(b)) {
    throw Error("not a subgroup of the ambient group");
  }
  const Group& smaller = a.order() <= b.order() ? a : b;
  const Group& other = a.order() <= b.order() ? b : a;
  return filter_subgroup(smaller, limit, [&](const Permutation& x) { return other.contains(x); });
}

// Elements of `ambient` that conjugate `sub` into itself, by exhaustion.
inline Group normalizer(const Group& ambient, const Group& sub,
                        std::uint64_t limit = kDefaultEnumerationLimit) {
  return filter_subgroup(ambient, limit, [&](const Permutation& x) {
    return std::all_of(sub.generators().begin(), sub.generators().end(),
                       [&](const Permutation& h) { return sub.contains(conjugate(h, x)); });
  });
}

struct ConjugacyClass {
  Permutation representative;
  std::uint64_t size = 0;
};

struct ClassPartition {
  std::vector<ConjugacyClass> classes;  // ordered by smallest element index
  std::vector<std::uint32_t> class_of;  // element index -> class
};

inline ClassPartition conjugacy_classes(const Group& g,
                                        std::uint64_t limit = kDefaultEnumerationLimit) {
  const std::uint64_t n = g.enumerable_order(limit);
  constexpr std::uint32_t kUnset = UINT32_MAX;
  ClassPartition out;
  out.class_of.assign(n, kUnset);
  std::vector<std::uint64_t> frontier;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (out.class_of[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.classes.size());
    ConjugacyClass cls{g.element_at(start), 0};
    frontier.assign(1, start);
    out.class_of[start] = id;
    while (!frontier.empty()) {
      const std::uint64_t i = frontier.back();
      frontier.pop_back();
      ++cls.size;
      const Permutation x = g.element_at(i);
      for (const auto& s : g.generators()) {
        const std::uint64_t j = g.index_of(conjugate(x, s));
        if (out.class_of[j] == kUnset) {
          out.class_of[j] = id;
          frontier.push_back(j);
        }
      }
    }
    out.classes.push_back(std::move(cls));
  }
  return out;
}

// Every normal subgroup of a finite group, with inclusion.
//
// A normal subgroup is a union of conjugacy classes, so it is identified by
// the set of classes it contains. The lattice is the closure under joins of
// the normal closures of single class representatives.
class NormalSubgroupLattice {
 public:
  using ClassSet = std::vector<bool>;

  NormalSubgroupLattice(Group ambient, ClassPartition partition, std::vector<Group> members,
                        std::vector<ClassSet> class_sets)
      : ambient_(std::move(ambient)),
        partition_(std::move(partition)),
        members_(std::move(members)),
        class_sets_(std::move(class_sets)) {}

  const Group& ambient() const noexcept { return ambient_; }
  const ClassPartition& classes() const noexcept { return partition_; }
  std::size_t size() const noexcept { return members_.size(); }
  const Group& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Group>& members() const noexcept { return members_; }
  const ClassSet& class_set(std::size_t i) const { return class_sets_[i]; }

  // members()[i] is a subgroup of members()[j].
  bool is_contained(std::size_t i, std::size_t j) const {
    for (std::size_t c = 0; c < class_sets_[i].size(); ++c) {
      if (class_sets_[i][c] && !class_sets_[j][c]) return false;
    }
    return true;
  }

  // Members covering i (minimal among the strictly larger ones).
  std::vector<std::size_t> parents(std::size_t i) const {
    std::vector<std::size_t> above;
    for (std::size_t j = 0; j < size(); ++j) {
      if (j != i && is_contained(i, j)) above.push_back(j);
    }
    std::vector<std::size_t> covers;
    for (auto j : above) {
      bool minimal = std::none_of(above.begin(), above.end(), [&](std::size_t k) {
        return k != j && is_contained(k, j);
      });
      if (minimal) covers.push_back(j);
    }
    return covers;
  }

  // Index of the member with exactly these classes, if any.
  std::optional<std::size_t> find(const ClassSet& s) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (class_sets_[i] == s) return i;
    }
    return std::nullopt;
  }

  ClassSet class_set_of(const Group& normal_subgroup) const {
    ClassSet s(partition_.classes.size(), false);
    for (std::size_t c = 0; c < s.size(); ++c) {
      s[c] = normal_subgroup.contains(partition_.classes[c].representative);
    }
    return s;
  }

  // Position of a normal subgroup of the ambient group in the lattice.
  std::optional<std::size_t> find(const Group& normal_subgroup) const {
    return find(class_set_of(normal_subgroup));
  }

  std::vector<std::size_t> minimal_nontrivial() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (members_[i].is_trivial()) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < size() && minimal; ++j) {
        if (j != i && !members_[j].is_trivial() && is_contained(j, i)) minimal = false;
      }
      if (minimal) out.push_back(i);
    }
    return out;
  }

 private:
  Group ambient_;
  ClassPartition partition_;
  std::vector<Group> members_;
  std::vector<ClassSet> class_sets_;
};

inline NormalSubgroupLattice enumerate_normal_subgroups(
    const Group& g, std::uint64_t limit = kDefaultEnumerationLimit) {
  ClassPartition partition = conjugacy_classes(g, limit);
  const std::size_t class_count = partition.classes.size();

  std::vector<Group> members;
  std::vector<NormalSubgroupLattice::ClassSet> sets;
  auto class_set_of = [&](const Group& n) {
    NormalSubgroupLattice::ClassSet s(class_count, false);
    for (std::size_t c = 0; c < class_count; ++c) {
      s[c] = n.contains(partition.classes[c].representative);
    }
    return s;
  };
  auto insert = [&](Group n) {
    auto s = class_set_of(n);
    if (std::find(sets.begin(), sets.end(), s) != sets.end()) return false;
    sets.push_back(std::move(s));
    members.push_back(std::move(n));
    return true;
  };

  insert(Group::trivial(g.degree()));
  for (const auto& cls : partition.classes) {
    if (cls.representative.is_identity()) continue;
    insert(normal_closure(g, {cls.representative}));
  }
  // Joins of normal subgroups are generated by the union of generators.
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = members.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (members[i].is_trivial() || members[j].is_trivial()) continue;
        bool comparable = true;
        for (std::size_t c = 0; c < class_count && comparable; ++c) {
          if (sets[i][c] && !sets[j][c]) comparable = false;
        }
        if (!comparable) {
          comparable = true;
          for (std::size_t c = 0; c < class_count && comparable; ++c) {
            if (sets[j][c] && !sets[i][c]) comparable = false;
          }
        }
        if (comparable) continue;
        std::vector<Permutation> gens = members[i].generators();
        gens.insert(gens.end(), members[j].generators().begin(), members[j].generators().end());
        if (insert(Group(gens))) grew = true;
      }
    }
  }

  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Order oa = members[a].order();
    const Order ob = members[b].order();
    if (oa != ob) return oa < ob;
    return sets[a] > sets[b];
  });
  std::vector<Group> sorted_members;
  std::vector<NormalSubgroupLattice::ClassSet> sorted_sets;
  for (auto k : order) {
    sorted_members.push_back(members[k]);
    sorted_sets.push_back(sets[k]);
  }
  return NormalSubgroupLattice(g, std::move(partition), std::move(sorted_members),
                               std::move(sorted_sets));
}

// Intersection of all nontrivial normal subgroups; nullopt when it is
// trivial (the group is not monolithic) or the group itself is trivial.
inline std::optional<Group> monolith(const NormalSubgroupLattice& lattice) {
  const auto& classes = lattice.classes().classes;
  NormalSubgroupLattice::ClassSet meet(classes.size(), true);
  bool any = false;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (lattice[i].is_trivial()) continue;
    any = true;
    for (std::size_t c = 0; c < meet.size(); ++c) meet[c] = meet[c] && lattice.class_set(i)[c];
  }
  if (!any) return std::nullopt;
  auto index = lattice.find(meet);
  if (!index || lattice[*index].is_trivial()) return std::nullopt;
  return lattice[*index];
}

inline std::optional<Group> monolith(const Group& g, std::uint64_t limit = kDefaultEnumerationLimit) {
  return monolith(enumerate_normal_subgroups(g, limit));
}

namespace detail {

// Invariant factors (> 1) of the abelian group Z^n / rowspace(m).
inline std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> diagonal;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest nonzero absolute value in the trailing block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    while (true) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = m[i][t] / m[t][t];
        if (q) {
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        }
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = m[t][j] / m[t][t];
        if (q) {
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        }
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          changed = true;
        }
      }
      if (changed) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols && divisible; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divisible = false;
          }
        }
      }
      if (divisible) break;
    }
    diagonal.push_back(std::llabs(m[t][t]));
  }
  std::vector<std::int64_t> out;
  for (auto d : diagonal) {
    if (d > 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Permutation power(const Permutation& g, std::uint64_t e) {
  Permutation result(g.degree());
  Permutation base = g;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

}  // namespace detail

// Invariant factors d1 | d2 | ... of G/G' (empty for a perfect group).
inline std::vector<std::int64_t> abelian_invariants(const Group& g, const Group& derived,
                                                    std::uint64_t limit = kDefaultEnumerationLimit) {
  // Polycyclic presentation of G/G' along H_i = <G', g_1, ..., g_i>: each
  // g_i has relative order e_i and g_i^{e_i} is rewritten in the earlier
  // generators by search over the (small) quotient H_{i-1}/G'.
  std::vector<Permutation> gens;
  std::vector<std::uint64_t> rel_order;
  std::vector<std::vector<std::int64_t>> relations;
  GroupBuilder current(g.degree());
  for (const auto& d : derived.generators()) current.add(d);
  Order quotient = 1;
  for (const auto& x : g.generators()) {
    const Order before = current.order();
    if (current.contains(x)) continue;
    current.add(x);
    const Order step = current.order() / before;
    if (step > limit) throw LimitExceeded();
    const auto e = static_cast<std::uint64_t>(step);
    quotient *= e;
    if (quotient > limit) throw LimitExceeded();

    const Permutation target = detail::power(x, e);
    const std::size_t r = gens.size();
    std::vector<std::uint64_t> coords(r, 0);
    bool found = false;
    while (true) {
      // word = prod g_j^{c_j}; accept when target * word^-1 lies in G'
      Permutation word(g.degree());
      for (std::size_t j = 0; j < r; ++j) word = word * detail::power(gens[j], coords[j]);
      if (derived.contains(target * word.inverse())) {
        found = true;
        break;
      }
      std::size_t k = 0;
      while (k < r && ++coords[k] == rel_order[k]) coords[k++] = 0;
      if (k == r) break;
    }
    if (!found) throw Error("abelianization relation not found");
    std::vector<std::int64_t> row(g.generators().size(), 0);
    row[r] = static_cast<std::int64_t>(e);
    for (std::size_t j = 0; j < r; ++j) row[j] -= static_cast<std::int64_t>(coords[j]);
    relations.push_back(std::move(row));
    gens.push_back(x);
    rel_order.push_back(e);
  }
  for (auto& row : relations) row.resize(gens.size());
  return detail::smith_invariants(std::move(relations));
}

struct StructureFingerprint {
  Order order;
  Order derived_order;
  Order center_order;
  std::vector<std::int64_t> abelianization;  // invariant factors of G/G'
  std::int64_t abelianization_exponent = 1;

  friend bool operator==(const StructureFingerprint&, const StructureFingerprint&) = default;
};

inline std::string to_string(const StructureFingerprint& f) {
  std::string ab;
  for (auto d : f.abelianization) ab += (ab.empty() ? "C" : " x C") + std::to_string(d);
  if (ab.empty()) ab = "1";
  return "order " + f.order.str() + ", derived " + f.derived_order.str() + ", center " +
         f.center_order.str() + ", G/G' " + ab;
}

inline StructureFingerprint structure_fingerprint(const Group& g,
                                                  std::uint64_t limit = kDefaultEnumerationLimit) {
  StructureFingerprint f;
  f.order = g.order();
  const Group d = derived_subgroup(g);
  f.derived_order = d.order();
  f.center_order = center(g, limit).order();
  f.abelianization = abelian_invariants(g, d, limit);
  for (auto x : f.abelianization) f.abelianization_exponent = std::lcm(f.abelianization_exponent, x);
  return f;
}

inline std::vector<std::string> generator_strings(const Group& g) {
  std::vector<std::string> out;
  for (const auto& x : g.generators()) out.push_back(to_string(x));
  return out;
}

}  // namespace wreathkit
