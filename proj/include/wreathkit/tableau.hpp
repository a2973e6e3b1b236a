#pragma once

// Finite-depth Kaloujnine tableaux.
//
// A tableau over degrees (n_1, ..., n_k) stores one permutation of degree n_l
// for every vertex of level l-1 of the spherically homogeneous rooted tree,
// i.e. mu_l = n_1 * ... * n_{l-1} entries at level l. Vertices within a
// level are ordered lexicographically by their path from the root.
//
// Levels are 1-based in this interface (level 1 is the root permutation);
// letters and vertex indices are 0-based.

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "wreathkit/error.hpp"
#include "wreathkit/perm.hpp"
#include "wreathkit/random.hpp"

namespace wreathkit {

class WreathSpec {
 public:
  WreathSpec() = default;

  // Degrees from the root down. Throws unless nonempty and all >= 2.
  explicit WreathSpec(std::vector<std::size_t> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty()) throw Error("wreath spec needs at least one level");
    for (auto n : degrees_) {
      if (n < 2) throw Error("level degrees must be at least 2");
    }
    mu_.assign(1, 1);
    for (auto n : degrees_) {
      if (mu_.back() > std::numeric_limits<std::size_t>::max() / n) {
        throw Error("wreath spec too large");
      }
      mu_.push_back(mu_.back() * n);
    }
  }

  std::size_t depth() const noexcept { return degrees_.size(); }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }

  // n_l, for 1 <= l <= depth().
  std::size_t degree(std::size_t level) const { return degrees_.at(level - 1); }

  // mu_l: number of vertex permutations at level l (vertices at level l-1).
  std::size_t vertices(std::size_t level) const { return mu_.at(level - 1); }

  std::size_t leaves() const noexcept { return mu_.back(); }

  // First j levels.
  WreathSpec truncated(std::size_t j) const {
    if (j < 1 || j > depth()) throw Error("depth out of range");
    return WreathSpec(std::vector<std::size_t>(degrees_.begin(), degrees_.begin() + j));
  }

  friend bool operator==(const WreathSpec&, const WreathSpec&) = default;

 private:
  std::vector<std::size_t> degrees_;
  std::vector<std::size_t> mu_;
};

inline std::string to_string(const WreathSpec& spec) {
  std::string s;
  for (auto n : spec.degrees()) s += (s.empty() ? "(" : ",") + std::to_string(n);
  return s + ")";
}

using Word = std::vector<std::size_t>;

inline constexpr std::size_t kInfiniteDepth = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  static Tableau identity(const WreathSpec& spec) {
    Tableau t;
    t.spec_ = spec;
    for (std::size_t l = 1; l <= spec.depth(); ++l) {
      t.levels_.emplace_back(spec.vertices(l), Permutation(spec.degree(l)));
    }
    return t;
  }

  // Throws unless level l holds mu_l permutations of degree n_l.
  Tableau(WreathSpec spec, std::vector<std::vector<Permutation>> levels)
      : spec_(std::move(spec)), levels_(std::move(levels)) {
    if (levels_.size() != spec_.depth()) throw Error("tableau level count does not match spec");
    for (std::size_t l = 1; l <= spec_.depth(); ++l) {
      const auto& row = levels_[l - 1];
      if (row.size() != spec_.vertices(l)) {
        throw Error("level " + std::to_string(l) + " needs " + std::to_string(spec_.vertices(l)) +
                    " entries");
      }
      for (const auto& p : row) {
        if (p.degree() != spec_.degree(l)) {
          throw Error("level " + std::to_string(l) + " entries must have degree " +
                      std::to_string(spec_.degree(l)));
        }
      }
    }
  }

  const WreathSpec& spec() const noexcept { return spec_; }

  const Permutation& entry(std::size_t level, std::size_t vertex) const {
    return levels_.at(level - 1).at(vertex);
  }

  void set_entry(std::size_t level, std::size_t vertex, Permutation p) {
    if (p.degree() != spec_.degree(level)) throw Error("entry degree mismatch");
    levels_.at(level - 1).at(vertex) = std::move(p);
  }

  const std::vector<Permutation>& level(std::size_t l) const { return levels_.at(l - 1); }

  bool is_identity() const {
    for (const auto& row : levels_) {
      for (const auto& p : row) {
        if (!p.is_identity()) return false;
      }
    }
    return true;
  }

  // image[l][v]: where the vertex v of level l goes, for 0 <= l < depth.
  std::vector<std::vector<std::size_t>> vertex_images() const {
    std::vector<std::vector<std::size_t>> images(spec_.depth());
    images[0].assign(1, 0);
    for (std::size_t l = 1; l < spec_.depth(); ++l) {
      const std::size_t n = spec_.degree(l);
      images[l].resize(spec_.vertices(l + 1));
      for (std::size_t parent = 0; parent < spec_.vertices(l); ++parent) {
        const Permutation& p = levels_[l - 1][parent];
        for (std::size_t c = 0; c < n; ++c) {
          images[l][parent * n + c] = images[l - 1][parent] * n + p(static_cast<Point>(c));
        }
      }
    }
    return images;
  }

  friend bool operator==(const Tableau&, const Tableau&) = default;

 private:
  Tableau() = default;

  WreathSpec spec_;
  std::vector<std::vector<Permutation>> levels_;
};

// (g h) at vertex v is g_v followed by h_{g(v)}.
inline Tableau t_multiply(const Tableau& g, const Tableau& h) {
  if (!(g.spec() == h.spec())) throw Error("spec mismatch");
  const auto images = g.vertex_images();
  std::vector<std::vector<Permutation>> levels;
  for (std::size_t l = 1; l <= g.spec().depth(); ++l) {
    std::vector<Permutation> row;
    row.reserve(g.spec().vertices(l));
    for (std::size_t v = 0; v < g.spec().vertices(l); ++v) {
      row.push_back(g.entry(l, v) * h.entry(l, images[l - 1][v]));
    }
    levels.push_back(std::move(row));
  }
  return Tableau(g.spec(), std::move(levels));
}

inline Tableau t_inverse(const Tableau& g) {
  const auto images = g.vertex_images();
  Tableau inv = Tableau::identity(g.spec());
  for (std::size_t l = 1; l <= g.spec().depth(); ++l) {
    for (std::size_t v = 0; v < g.spec().vertices(l); ++v) {
      inv.set_entry(l, images[l - 1][v], g.entry(l, v).inverse());
    }
  }
  return inv;
}

inline Tableau t_conjugate(const Tableau& a, const Tableau& by) {
  return t_multiply(t_multiply(by, a), t_inverse(by));
}

inline Tableau t_commutator(const Tableau& a, const Tableau& b) {
  return t_multiply(t_multiply(a, b), t_multiply(t_inverse(a), t_inverse(b)));
}

// Index, within level len+1's entry list, of the vertex reached by `prefix`.
inline std::size_t vertex_index(const WreathSpec& spec, const Word& prefix) {
  std::size_t v = 0;
  for (std::size_t l = 0; l < prefix.size(); ++l) v = v * spec.degree(l + 1) + prefix[l];
  return v;
}

// Letter l of the image is g's entry at the vertex spelled by the first l-1
// letters of the word, applied to letter l.
inline Word t_act(const Tableau& g, const Word& word) {
  const WreathSpec& spec = g.spec();
  if (word.size() > spec.depth()) throw Error("word longer than tableau depth");
  Word image(word.size());
  std::size_t vertex = 0;
  for (std::size_t l = 0; l < word.size(); ++l) {
    if (word[l] >= spec.degree(l + 1)) throw Error("letter out of range");
    image[l] = g.entry(l + 1, vertex)(static_cast<Point>(word[l]));
    vertex = vertex * spec.degree(l + 1) + word[l];
  }
  return image;
}

// Smallest level with a nontrivial entry; kInfiniteDepth for the identity.
inline std::size_t depth(const Tableau& g) {
  for (std::size_t l = 1; l <= g.spec().depth(); ++l) {
    for (const auto& p : g.level(l)) {
      if (!p.is_identity()) return l;
    }
  }
  return kInfiniteDepth;
}

inline std::size_t rank_sum(const Tableau& g, std::size_t level) {
  if (level < 1 || level > g.spec().depth()) throw Error("level out of range");
  std::size_t total = 0;
  for (const auto& p : g.level(level)) total += rank(p);
  return total;
}

// Component l-1 is the sign of the product of level l's entries (1 = odd).
inline std::vector<bool> level_parity_vector(const Tableau& g) {
  std::vector<bool> parity;
  for (std::size_t l = 1; l <= g.spec().depth(); ++l) parity.push_back(rank_sum(g, l) % 2 == 1);
  return parity;
}

inline bool level_product_even(const Tableau& g, std::size_t level) {
  return rank_sum(g, level) % 2 == 0;
}

// Level entries grouped into consecutive blocks of `block` vertices (the
// children of one vertex of an upper level): every block has an even product.
inline bool blocks_even(const Tableau& g, std::size_t level, std::size_t block) {
  const auto& row = g.level(level);
  if (block == 0 || row.size() % block != 0) throw Error("block size does not divide level");
  for (std::size_t start = 0; start < row.size(); start += block) {
    std::size_t r = 0;
    for (std::size_t i = start; i < start + block; ++i) r += rank(row[i]);
    if (r % 2) return false;
  }
  return true;
}

// Within every block all entries have the same parity.
inline bool blocks_uniform_parity(const Tableau& g, std::size_t level, std::size_t block) {
  const auto& row = g.level(level);
  if (block == 0 || row.size() % block != 0) throw Error("block size does not divide level");
  for (std::size_t start = 0; start < row.size(); start += block) {
    for (std::size_t i = start + 1; i < start + block; ++i) {
      if (is_even(row[i]) != is_even(row[start])) return false;
    }
  }
  return true;
}

struct TypeFlags {
  // Only meaningful for depth-2 tableaux (has_depth2_flags).
  bool has_depth2_flags = false;
  bool a_tilde = false;      // trivial top, even rank sum on level 2
  bool a_zero = false;       // same predicate under its second name
  bool t_tilde_even = false; // trivial top, every level-2 entry even
  bool t_tilde_odd = false;  // trivial top, every level-2 entry odd
  // n_levels[i-1]: depth >= i and every level product even.
  std::vector<bool> n_levels;

  bool t_tilde() const { return t_tilde_even || t_tilde_odd; }
};

inline bool is_type_a_tilde(const Tableau& g) {
  if (g.spec().depth() != 2) throw Error("type predicates need a depth-2 spec");
  return g.entry(1, 0).is_identity() && level_product_even(g, 2);
}

inline TypeFlags classify(const Tableau& g) {
  TypeFlags f;
  const WreathSpec& spec = g.spec();
  if (spec.depth() == 2) {
    f.has_depth2_flags = true;
    const bool top_trivial = g.entry(1, 0).is_identity();
    f.a_tilde = f.a_zero = is_type_a_tilde(g);
    bool all_even = true;
    bool all_odd = true;
    for (const auto& p : g.level(2)) {
      (is_even(p) ? all_odd : all_even) = false;
    }
    f.t_tilde_even = top_trivial && all_even;
    f.t_tilde_odd = top_trivial && all_odd;
  }
  const auto parity = level_parity_vector(g);
  const bool all_even_levels = std::none_of(parity.begin(), parity.end(), [](bool b) { return b; });
  const std::size_t d = depth(g);
  for (std::size_t i = 1; i <= spec.depth(); ++i) {
    f.n_levels.push_back(all_even_levels && d >= i);
  }
  return f;
}

inline std::string to_string(const TypeFlags& f) {
  std::string s;
  auto add = [&](bool on, const std::string& name) {
    if (on) s += (s.empty() ? "" : " ") + name;
  };
  if (f.has_depth2_flags) {
    add(f.a_tilde, "A~");
    add(f.a_zero, "A0");
    add(f.t_tilde_even, "T~even");
    add(f.t_tilde_odd, "T~odd");
  }
  for (std::size_t i = 0; i < f.n_levels.size(); ++i) add(f.n_levels[i], "N" + std::to_string(i + 1));
  return s.empty() ? "-" : s;
}

// "[()];[(1,2),(1,2),()]": one bracketed, comma-separated list per level.
inline std::string to_string(const Tableau& g) {
  std::string s;
  for (std::size_t l = 1; l <= g.spec().depth(); ++l) {
    if (l > 1) s += ";";
    s += "[";
    for (std::size_t v = 0; v < g.spec().vertices(l); ++v) {
      if (v) s += ",";
      s += to_string(g.entry(l, v));
    }
    s += "]";
  }
  return s;
}

inline Tableau parse_tableau(std::string_view text, const WreathSpec& spec) {
  std::vector<std::vector<Permutation>> levels;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip_ws();
    if (i == text.size() || text[i] != '[') throw Error("expected '[' in tableau literal");
    const std::size_t close = text.find(']', i);
    if (close == std::string_view::npos) throw Error("unterminated tableau level");
    const std::size_t l = levels.size() + 1;
    if (l > spec.depth()) throw Error("tableau has more levels than the spec");
    std::string_view body = text.substr(i + 1, close - i - 1);
    std::vector<Permutation> row;
    // entries are cycle strings separated by commas at parenthesis depth 0
    std::size_t start = 0;
    int paren = 0;
    for (std::size_t k = 0; k <= body.size(); ++k) {
      if (k == body.size() || (body[k] == ',' && paren == 0)) {
        row.push_back(parse_permutation(body.substr(start, k - start), spec.degree(l)));
        start = k + 1;
      } else if (body[k] == '(') {
        ++paren;
      } else if (body[k] == ')') {
        --paren;
      }
    }
    levels.push_back(std::move(row));
    i = close + 1;
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != ';') throw Error("expected ';' between tableau levels");
    ++i;
  }
  return Tableau(spec, std::move(levels));
}

template <class Engine>
Tableau random_tableau(const WreathSpec& spec, Engine& rng) {
  std::vector<std::vector<Permutation>> levels;
  for (std::size_t l = 1; l <= spec.depth(); ++l) {
    std::vector<Permutation> row;
    for (std::size_t v = 0; v < spec.vertices(l); ++v) row.push_back(random_permutation(spec.degree(l), rng));
    levels.push_back(std::move(row));
  }
  return Tableau(spec, std::move(levels));
}

// Tableau whose only nontrivial entry is p at (level, vertex).
inline Tableau single_entry(const WreathSpec& spec, std::size_t level, std::size_t vertex, Permutation p) {
  Tableau t = Tableau::identity(spec);
  t.set_entry(level, vertex, std::move(p));
  return t;
}

}  // namespace wreathkit
