#pragma once

// Iterated wreath products acting on the leaves of a finite rooted tree.
//
// Leaves are numbered by the mixed-radix rule
//   leaf(i_1, ..., i_k) = sum_l i_l * (n_{l+1} * ... * n_k)      (0-based)
// so the leaves below any vertex form a contiguous block. The first level of
// a spec is the root, whose permutation moves the top-level blocks.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wreathkit/error.hpp"
#include "wreathkit/group.hpp"
#include "wreathkit/perm.hpp"
#include "wreathkit/tableau.hpp"

namespace wreathkit {

inline constexpr std::size_t kDefaultLeafLimit = 10'000;

enum class LevelKind { symmetric, alternating };

struct WreathType {
  WreathSpec spec;
  std::vector<LevelKind> kinds;

  std::size_t depth() const { return spec.depth(); }
  bool all_symmetric() const {
    for (auto k : kinds) {
      if (k != LevelKind::symmetric) return false;
    }
    return true;
  }

  friend bool operator==(const WreathType&, const WreathType&) = default;
};

inline WreathType symmetric_type(const WreathSpec& spec) {
  return {spec, std::vector<LevelKind>(spec.depth(), LevelKind::symmetric)};
}

// "S3*S3", "A5*S5", "S3*S3*S3".
inline WreathType parse_wreath_type(std::string_view text) {
  std::vector<std::size_t> degrees;
  std::vector<LevelKind> kinds;
  std::size_t i = 0;
  const auto bad = [&]() { return Error("malformed wreath spec '" + std::string(text) + "'"); };
  while (true) {
    if (i == text.size()) throw bad();
    const char letter = text[i];
    if (letter == 'S') {
      kinds.push_back(LevelKind::symmetric);
    } else if (letter == 'A') {
      kinds.push_back(LevelKind::alternating);
    } else {
      throw bad();
    }
    ++i;
    std::size_t value = 0;
    const std::size_t digits_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + static_cast<std::size_t>(text[i] - '0');
      if (value > 1'000'000) throw bad();
      ++i;
    }
    if (i == digits_start) throw bad();
    degrees.push_back(value);
    if (i == text.size()) break;
    if (text[i] != '*') throw bad();
    ++i;
  }
  return {WreathSpec(std::move(degrees)), std::move(kinds)};
}

inline std::string to_string(const WreathType& type) {
  std::string s;
  for (std::size_t l = 1; l <= type.depth(); ++l) {
    if (l > 1) s += "*";
    s += type.kinds[l - 1] == LevelKind::symmetric ? "S" : "A";
    s += std::to_string(type.spec.degree(l));
  }
  return s;
}

class LeafIndexing {
 public:
  explicit LeafIndexing(WreathSpec spec) : spec_(std::move(spec)) {
    stride_.assign(spec_.depth() + 1, 1);
    for (std::size_t l = spec_.depth(); l-- > 0;) stride_[l] = stride_[l + 1] * spec_.degree(l + 1);
  }

  const WreathSpec& spec() const noexcept { return spec_; }
  std::size_t leaves() const noexcept { return spec_.leaves(); }

  // Leaves below one vertex of level l-1 (i.e. one entry of level l).
  std::size_t block_size(std::size_t level) const { return stride_.at(level - 1); }

  std::size_t leaf(const Word& path) const {
    if (path.size() != spec_.depth()) throw Error("path length must equal the depth");
    std::size_t x = 0;
    for (std::size_t l = 0; l < path.size(); ++l) {
      if (path[l] >= spec_.degree(l + 1)) throw Error("letter out of range");
      x += path[l] * stride_[l + 1];
    }
    return x;
  }

  Word path(std::size_t leaf) const {
    if (leaf >= leaves()) throw Error("leaf out of range");
    Word w(spec_.depth());
    for (std::size_t l = 0; l < w.size(); ++l) {
      w[l] = leaf / stride_[l + 1];
      leaf %= stride_[l + 1];
    }
    return w;
  }

 private:
  WreathSpec spec_;
  std::vector<std::size_t> stride_;
};

inline Permutation tableau_to_perm(const Tableau& t) {
  const WreathSpec& spec = t.spec();
  const std::size_t k = spec.depth();
  // current[v] = image of vertex v at the level being processed
  std::vector<std::size_t> current(1, 0);
  for (std::size_t l = 1; l <= k; ++l) {
    const std::size_t n = spec.degree(l);
    std::vector<std::size_t> next(current.size() * n);
    for (std::size_t v = 0; v < current.size(); ++v) {
      const Permutation& p = t.entry(l, v);
      for (std::size_t c = 0; c < n; ++c) next[v * n + c] = current[v] * n + p(static_cast<Point>(c));
    }
    current = std::move(next);
  }
  std::vector<Point> images(current.begin(), current.end());
  return Permutation::from_images(std::move(images));
}

inline Tableau perm_to_tableau(const Permutation& p, const WreathSpec& spec) {
  if (p.degree() != spec.leaves()) throw Error("degree does not match the spec's leaf count");
  const LeafIndexing index(spec);
  Tableau t = Tableau::identity(spec);
  for (std::size_t l = 1; l <= spec.depth(); ++l) {
    const std::size_t n = spec.degree(l);
    const std::size_t block = index.block_size(l);
    const std::size_t sub = index.block_size(l + 1);
    for (std::size_t v = 0; v < spec.vertices(l); ++v) {
      std::vector<Point> images(n);
      for (std::size_t c = 0; c < n; ++c) {
        images[c] = static_cast<Point>((p(static_cast<Point>(v * block + c * sub)) / sub) % n);
      }
      try {
        t.set_entry(l, v, Permutation::from_images(std::move(images)));
      } catch (const Error&) {
        throw Error("not block-structured");
      }
    }
  }
  if (!(tableau_to_perm(t) == p)) throw Error("not block-structured");
  return t;
}

// Truncation to the first j levels.
inline Tableau project(const Tableau& g, std::size_t j) {
  if (j < 1 || j > g.spec().depth()) throw Error("projection depth out of range");
  const WreathSpec target = g.spec().truncated(j);
  std::vector<std::vector<Permutation>> levels;
  for (std::size_t l = 1; l <= j; ++l) levels.push_back(g.level(l));
  return Tableau(target, std::move(levels));
}

inline Permutation project(const Permutation& p, const WreathSpec& spec, std::size_t j) {
  return tableau_to_perm(project(perm_to_tableau(p, spec), j));
}

// Standard generators of S_n (n-cycle and (1,2)) or A_n (3-cycles (1,2,i)).
inline std::vector<Permutation> level_generators(std::size_t n, LevelKind kind) {
  std::vector<Permutation> gens;
  if (kind == LevelKind::symmetric) {
    if (n > 2) gens.push_back(consecutive_cycle(n, 0, static_cast<Point>(n - 1)));
    gens.push_back(transposition(n, 0, 1));
  } else {
    for (Point i = 2; i < n; ++i) gens.push_back(from_cycles(n, {{0, 1, i}}));
  }
  return gens;
}

inline void check_leaf_limit(const WreathSpec& spec, std::size_t leaf_limit) {
  if (spec.leaves() > leaf_limit) {
    throw Error("leaf count " + std::to_string(spec.leaves()) + " exceeds the leaf limit " +
                std::to_string(leaf_limit));
  }
}

// One copy of the level generators per vertex, deepest level first.
inline std::vector<Tableau> wreath_generator_tableaux(const WreathType& type) {
  std::vector<Tableau> gens;
  for (std::size_t l = type.depth(); l >= 1; --l) {
    const auto local = level_generators(type.spec.degree(l), type.kinds[l - 1]);
    for (std::size_t v = 0; v < type.spec.vertices(l); ++v) {
      for (const auto& p : local) gens.push_back(single_entry(type.spec, l, v, p));
    }
  }
  return gens;
}

inline std::vector<Permutation> to_perms(const std::vector<Tableau>& tableaux) {
  std::vector<Permutation> out;
  out.reserve(tableaux.size());
  for (const auto& t : tableaux) out.push_back(tableau_to_perm(t));
  return out;
}

inline Group group_of(const WreathSpec& spec, const std::vector<Tableau>& tableaux) {
  if (tableaux.empty()) return Group::trivial(spec.leaves());
  return build_group(to_perms(tableaux));
}

inline Group build_wreath(const WreathType& type, std::size_t leaf_limit = kDefaultLeafLimit) {
  check_leaf_limit(type.spec, leaf_limit);
  return group_of(type.spec, wreath_generator_tableaux(type));
}

inline Group build_wreath(const WreathSpec& spec, std::size_t leaf_limit = kDefaultLeafLimit) {
  return build_wreath(symmetric_type(spec), leaf_limit);
}

inline Order factorial(std::size_t n) {
  Order r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Order pow(Order base, std::size_t e) {
  Order r = 1;
  while (e--) r *= base;
  return r;
}

// prod_l |X_l|^{mu_l}, X_l = S_{n_l} or A_{n_l}.
inline Order wreath_order(const WreathType& type) {
  Order r = 1;
  for (std::size_t l = 1; l <= type.depth(); ++l) {
    Order local = factorial(type.spec.degree(l));
    if (type.kinds[l - 1] == LevelKind::alternating) local /= 2;
    r *= pow(local, type.spec.vertices(l));
  }
  return r;
}

// Subgroups defined level by level: each level is either trivial or the
// even entries A^{mu} together with a space of allowed parity patterns.
enum class Parity {
  none,            // every entry even
  total_even,      // even number of odd entries on the level
  uniform,         // all entries even or all odd
  block_even,      // even number of odd entries in each block
  block_uniform,   // within each block, all even or all odd
  all              // unrestricted
};

struct LevelRule {
  bool trivial = true;
  Parity parity = Parity::none;
  std::size_t block = 0;  // for the block rules: consecutive vertices per block

  static LevelRule identity() { return {}; }
  static LevelRule even(Parity p, std::size_t block = 0) { return {false, p, block}; }
};

// Basis of the allowed parity patterns, as subsets of the level's vertices.
inline std::vector<std::vector<std::size_t>> parity_basis(const LevelRule& rule, std::size_t mu) {
  std::vector<std::vector<std::size_t>> basis;
  auto blocks = [&](auto&& each) {
    if (rule.block == 0 || mu % rule.block != 0) throw Error("block size does not divide level");
    for (std::size_t s = 0; s < mu; s += rule.block) each(s, s + rule.block);
  };
  switch (rule.parity) {
    case Parity::none:
      break;
    case Parity::total_even:
      for (std::size_t j = 1; j < mu; ++j) basis.push_back({0, j});
      break;
    case Parity::uniform: {
      std::vector<std::size_t> all(mu);
      for (std::size_t j = 0; j < mu; ++j) all[j] = j;
      basis.push_back(std::move(all));
      break;
    }
    case Parity::block_even:
      blocks([&](std::size_t s, std::size_t e) {
        for (std::size_t j = s + 1; j < e; ++j) basis.push_back({s, j});
      });
      break;
    case Parity::block_uniform:
      blocks([&](std::size_t s, std::size_t e) {
        std::vector<std::size_t> b;
        for (std::size_t j = s; j < e; ++j) b.push_back(j);
        basis.push_back(std::move(b));
      });
      break;
    case Parity::all:
      for (std::size_t j = 0; j < mu; ++j) basis.push_back({j});
      break;
  }
  return basis;
}

inline std::size_t parity_dimension(const LevelRule& rule, std::size_t mu) {
  return parity_basis(rule, mu).size();
}

inline std::vector<Tableau> levelwise_generators(const WreathSpec& spec,
                                                 const std::vector<LevelRule>& rules) {
  if (rules.size() != spec.depth()) throw Error("one rule per level required");
  std::vector<Tableau> gens;
  for (std::size_t l = spec.depth(); l >= 1; --l) {
    const LevelRule& rule = rules[l - 1];
    if (rule.trivial) continue;
    const std::size_t n = spec.degree(l);
    const auto even = level_generators(n, LevelKind::alternating);
    for (std::size_t v = 0; v < spec.vertices(l); ++v) {
      for (const auto& p : even) gens.push_back(single_entry(spec, l, v, p));
    }
    const Permutation tau = transposition(n, 0, 1);
    for (const auto& support : parity_basis(rule, spec.vertices(l))) {
      Tableau t = Tableau::identity(spec);
      for (auto v : support) t.set_entry(l, v, tau);
      gens.push_back(std::move(t));
    }
  }
  return gens;
}

inline Order levelwise_order(const WreathSpec& spec, const std::vector<LevelRule>& rules) {
  Order r = 1;
  for (std::size_t l = 1; l <= spec.depth(); ++l) {
    const LevelRule& rule = rules.at(l - 1);
    if (rule.trivial) continue;
    const std::size_t mu = spec.vertices(l);
    r *= pow(factorial(spec.degree(l)) / 2, mu);
    r *= pow(Order(2), parity_dimension(rule, mu));
  }
  return r;
}

// N_i: trivial above level i, every level product even from level i down.
inline std::vector<LevelRule> n_subgroup_rules(std::size_t depth, std::size_t i) {
  std::vector<LevelRule> rules(depth);
  for (std::size_t l = i; l <= depth; ++l) rules[l - 1] = LevelRule::even(Parity::total_even);
  return rules;
}

struct ParityQuotient {
  Order index;
  std::size_t exponent;  // exponent of W / N_1
  bool kernel_normal;
  bool quotient_abelian;
};

// Smallest e >= 1 with g^e in n; bounded by `bound`.
inline std::size_t order_modulo(const Permutation& g, const Group& n, std::size_t bound) {
  Permutation x = g;
  for (std::size_t e = 1; e <= bound; ++e) {
    if (n.contains(x)) return e;
    x = x * g;
  }
  throw Error("element order modulo subgroup exceeds bound");
}

inline ParityQuotient parity_quotient(const Group& w, const WreathSpec& spec) {
  const Group kernel = group_of(spec, levelwise_generators(spec, n_subgroup_rules(spec.depth(), 1)));
  if (!w.contains(kernel)) throw Error("parity kernel is not contained in the group");
  ParityQuotient q;
  q.index = w.order() / kernel.order();
  q.kernel_normal = is_normal(w, kernel);
  q.quotient_abelian = true;
  const auto& gens = w.generators();
  for (std::size_t a = 0; a < gens.size() && q.quotient_abelian; ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      if (!kernel.contains(commutator(gens[a], gens[b]))) {
        q.quotient_abelian = false;
        break;
      }
    }
  }
  q.exponent = 1;
  const std::size_t bound = q.index > 64 ? 64 : static_cast<std::size_t>(q.index);
  for (const auto& g : gens) q.exponent = std::lcm(q.exponent, order_modulo(g, kernel, bound));
  return q;
}

}  // namespace wreathkit
