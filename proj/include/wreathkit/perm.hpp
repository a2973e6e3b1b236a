#pragma once

// Finite permutations on {0, ..., degree-1}.
//
// Composition is left-to-right (right action, as in GAP): (p * q)(x) = q(p(x)).
// The text format is 1-based disjoint-cycle notation, e.g. "(1,2)(3,4,5)";
// the identity prints as "()".

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wreathkit/error.hpp"
#include "wreathkit/random.hpp"

namespace wreathkit {

using Point = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;

  // Identity of the given degree.
  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  // Throws if `images` is not a bijection of {0..n-1}.
  static Permutation from_images(std::vector<Point> images) {
    std::vector<bool> seen(images.size(), false);
    for (Point x : images) {
      if (x >= images.size() || seen[x]) {
        throw Error("images do not form a bijection");
      }
      seen[x] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const noexcept { return images_.size(); }

  Point operator()(Point x) const noexcept { return images_[x]; }

  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  // Smallest moved point, or degree() for the identity.
  std::size_t first_moved_point() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return i;
    }
    return images_.size();
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  // Left-to-right product: apply *this first, then q.
  Permutation operator*(const Permutation& q) const {
    if (degree() != q.degree()) throw Error("degree mismatch");
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      r.images_[i] = q.images_[images_[i]];
    }
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      r.images_[images_[i]] = static_cast<Point>(i);
    }
    return r;
  }

 private:
  std::vector<Point> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

inline Permutation inverse(const Permutation& p) { return p.inverse(); }

// Conjugation a^b = b a b^-1, written as a left-to-right word. This is the
// one place where the exponent convention a^b != b^-1 a b is pinned down.
inline Permutation conjugate(const Permutation& a, const Permutation& by) {
  return by * a * by.inverse();
}

// [a, b] = a b a^-1 b^-1 as a left-to-right word.
inline Permutation commutator(const Permutation& a, const Permutation& b) {
  return a * b * a.inverse() * b.inverse();
}

// Disjoint cycles (including fixed points as 1-cycles), each starting at its
// smallest point, ordered by that point.
inline std::vector<std::vector<Point>> cycles(const Permutation& p) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<Point> cycle;
    for (Point x = start; !seen[x]; x = p(x)) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

inline std::size_t cycle_count(const Permutation& p) { return cycles(p).size(); }

// Minimal number of transpositions whose product is p.
inline std::size_t rank(const Permutation& p) { return p.degree() - cycle_count(p); }

inline bool is_even(const Permutation& p) { return rank(p) % 2 == 0; }

inline int sign(const Permutation& p) { return is_even(p) ? 1 : -1; }

inline std::size_t order(const Permutation& p) {
  std::size_t result = 1;
  for (const auto& c : cycles(p)) result = std::lcm(result, c.size());
  return result;
}

struct CycleType {
  // Full partition of the degree, non-increasing, fixed points included.
  std::vector<std::size_t> partition;

  // Cycle lengths >= 2 only; empty for the identity.
  std::vector<std::size_t> nontrivial() const {
    std::vector<std::size_t> out;
    for (auto len : partition) {
      if (len >= 2) out.push_back(len);
    }
    return out;
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;
};

inline CycleType cycle_type(const Permutation& p) {
  CycleType ct;
  for (const auto& c : cycles(p)) ct.partition.push_back(c.size());
  std::sort(ct.partition.begin(), ct.partition.end(), std::greater<>());
  return ct;
}

inline std::string to_string(const CycleType& ct) {
  std::string s = "(";
  bool first = true;
  for (auto len : ct.nontrivial()) {
    if (!first) s += ",";
    s += std::to_string(len);
    first = false;
  }
  return s + ")";
}

// Builds a permutation of `degree` points from 0-based cycles.
inline Permutation from_cycles(std::size_t degree,
                               const std::vector<std::vector<Point>>& cycle_list) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycle_list) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree) throw Error("point out of range");
      if (used[c[i]]) throw Error("repeated point in cycle notation");
      used[c[i]] = true;
      images[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation::from_images(std::move(images));
}

// Transposition (a b), 0-based.
inline Permutation transposition(std::size_t degree, Point a, Point b) {
  return from_cycles(degree, {{a, b}});
}

// The cycle (first, first+1, ..., last), 0-based, inclusive.
inline Permutation consecutive_cycle(std::size_t degree, Point first, Point last) {
  std::vector<Point> c;
  for (Point x = first; x <= last; ++x) c.push_back(x);
  return from_cycles(degree, {c});
}

inline std::string to_string(const Permutation& p) {
  std::string s;
  for (const auto& c : cycles(p)) {
    if (c.size() < 2) continue;
    s += "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i] + 1);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> parse_cycle_list(std::string_view text) {
  std::vector<std::vector<std::size_t>> result;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw Error("empty permutation literal");
  while (i < text.size()) {
    if (text[i] != '(') throw Error("expected '(' in cycle notation");
    ++i;
    std::vector<std::size_t> cycle;
    bool expect_number = true;
    while (true) {
      skip_ws();
      if (i == text.size()) throw Error("unterminated cycle");
      char c = text[i];
      if (c == ')') {
        if (!cycle.empty() && expect_number) throw Error("dangling separator in cycle");
        ++i;
        break;
      }
      if (c == ',') {
        if (expect_number) throw Error("unexpected ',' in cycle notation");
        expect_number = true;
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error("unexpected character in cycle notation");
      }
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        if (value > (std::size_t{1} << 31)) throw Error("point out of range");
        ++i;
      }
      if (value == 0) throw Error("points are 1-based");
      cycle.push_back(value);
      // whitespace also separates points: "(1 2 3)"
      expect_number = false;
      skip_ws();
      if (i < text.size() && text[i] != ',' && text[i] != ')') expect_number = true;
    }
    result.push_back(std::move(cycle));
    skip_ws();
  }
  return result;
}

}  // namespace detail

// Parses 1-based cycle notation. With degree == 0 the degree is the largest
// point mentioned (at least 1).
inline Permutation parse_permutation(std::string_view text, std::size_t degree = 0) {
  auto raw = detail::parse_cycle_list(text);
  std::size_t max_point = 1;
  for (const auto& c : raw) {
    for (auto x : c) max_point = std::max(max_point, x);
  }
  if (degree == 0) degree = max_point;
  if (max_point > degree) throw Error("point out of range");
  std::vector<std::vector<Point>> zero_based;
  for (const auto& c : raw) {
    std::vector<Point> z;
    for (auto x : c) z.push_back(static_cast<Point>(x - 1));
    zero_based.push_back(std::move(z));
  }
  return from_cycles(degree, zero_based);
}

template <class Rng>
Permutation random_permutation(std::size_t degree, Rng& rng) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t i = degree; i > 1; --i) {
    std::swap(images[i - 1], images[uniform_below(rng, i)]);
  }
  return Permutation::from_images(std::move(images));
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace wreathkit
