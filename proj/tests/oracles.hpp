#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxpart/coxgraph.hpp"

// Brute-force models used as test oracles. None of them calls into the library beyond
// reading labels off a CoxeterGraph.
namespace oracle {

using Word = std::vector<int>;

struct Relation {
  Word from, to;
};

inline std::vector<Relation> braid_relations(const coxpart::CoxeterGraph& g) {
  std::vector<Relation> rels;
  for (int i = 0; i < g.rank(); ++i)
    for (int j = 0; j < g.rank(); ++j) {
      if (i == j || g.label(i, j).is_infinite()) continue;
      const int m = static_cast<int>(g.label(i, j).value());
      Relation r;
      for (int k = 0; k < m; ++k) {
        r.from.push_back(k % 2 == 0 ? i : j);
        r.to.push_back(k % 2 == 0 ? j : i);
      }
      rels.push_back(std::move(r));
    }
  return rels;
}

/// All words obtained from w by applying braid relations anywhere.
inline std::set<Word> braid_closure(const std::vector<Relation>& rels, const Word& w) {
  std::set<Word> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word u = std::move(queue.front());
    queue.pop_front();
    for (const auto& r : rels)
      for (std::size_t p = 0; p + r.from.size() <= u.size(); ++p) {
        if (!std::equal(r.from.begin(), r.from.end(), u.begin() + static_cast<std::ptrdiff_t>(p))) continue;
        Word v = u;
        std::copy(r.to.begin(), r.to.end(), v.begin() + static_cast<std::ptrdiff_t>(p));
        if (seen.insert(v).second) queue.push_back(std::move(v));
      }
  }
  return seen;
}

/// Tits' reduction: shorten by deleting a square s s in some braid-equivalent word.
inline Word tits_reduce(const coxpart::CoxeterGraph& g, Word w) {
  const auto rels = braid_relations(g);
  for (;;) {
    bool shortened = false;
    for (const Word& u : braid_closure(rels, w)) {
      for (std::size_t p = 0; p + 1 < u.size(); ++p)
        if (u[p] == u[p + 1]) {
          Word v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(p));
          v.insert(v.end(), u.begin() + static_cast<std::ptrdiff_t>(p + 2), u.end());
          w = std::move(v);
          shortened = true;
          break;
        }
      if (shortened) break;
    }
    if (!shortened) return w;
  }
}

/// The positive monoid as classes of words under braid relations.
class BraidMonoid {
 public:
  explicit BraidMonoid(const coxpart::CoxeterGraph& g) : rank_(g.rank()), rels_(braid_relations(g)) {}

  int rank() const { return rank_; }

  int cls(const Word& w) {
    if (auto it = index_.find(w); it != index_.end()) return it->second;
    const int id = static_cast<int>(classes_.size());
    std::set<Word> c = braid_closure(rels_, w);
    for (const Word& u : c) index_.emplace(u, id);
    classes_.push_back(std::move(c));
    return id;
  }
  const std::set<Word>& words(int c) const { return classes_[static_cast<std::size_t>(c)]; }
  Word rep(int c) const { return *words(c).begin(); }
  int length(int c) const { return static_cast<int>(rep(c).size()); }

  /// Classes of all elements of length ≤ n, by increasing length.
  std::vector<int> elements(int n) {
    std::vector<int> out{cls({})};
    std::vector<int> layer = out;
    for (int l = 1; l <= n; ++l) {
      std::set<int> next;
      for (int c : layer)
        for (int s = 0; s < rank_; ++s) {
          Word w = rep(c);
          w.push_back(s);
          next.insert(cls(w));
        }
      layer.assign(next.begin(), next.end());
      out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
  }

  /// Left divisors (prefix classes) or right divisors (suffix classes).
  const std::set<int>& divisors(int c, bool left) {
    auto& memo = left ? left_div_ : right_div_;
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    std::set<int> out;
    const std::set<Word> ws = words(c);
    for (const Word& w : ws)
      for (std::size_t k = 0; k <= w.size(); ++k)
        out.insert(left ? cls(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k)))
                        : cls(Word(w.end() - static_cast<std::ptrdiff_t>(k), w.end())));
    return memo.emplace(c, std::move(out)).first->second;
  }
  bool divides(int d, int x, bool left) { return divisors(x, left).count(d) > 0; }

  /// z with x = d z (left) or x = z d (right).
  int quotient(int d, int x, bool left) {
    const std::size_t k = words(d).begin()->size();
    const std::set<Word> ws = words(x);
    for (const Word& w : ws) {
      if (w.size() < k) break;
      Word head = left ? Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k))
                       : Word(w.end() - static_cast<std::ptrdiff_t>(k), w.end());
      if (cls(head) != d) continue;
      return cls(left ? Word(w.begin() + static_cast<std::ptrdiff_t>(k), w.end())
                      : Word(w.begin(), w.end() - static_cast<std::ptrdiff_t>(k)));
    }
    throw std::logic_error("oracle quotient: not a divisor");
  }

  /// Simple elements are those no representative of which contains a square.
  bool is_simple(int c) const {
    for (const Word& w : words(c))
      for (std::size_t p = 0; p + 1 < w.size(); ++p)
        if (w[p] == w[p + 1]) return false;
    return true;
  }

  /// Largest simple left (or right) divisor; nullopt if it is not unique.
  std::optional<int> max_simple(int c, bool left) {
    int best = -1, best_len = -1, ties = 0;
    for (int d : divisors(c, left)) {
      if (!is_simple(d)) continue;
      const int l = length(d);
      if (l > best_len) best = d, best_len = l, ties = 1;
      else if (l == best_len) ++ties;
    }
    if (ties != 1) return std::nullopt;
    return best;
  }

  /// Left normal form (left = true) or right normal form, as simple classes in product order.
  std::vector<int> normal_form(int c, bool left) {
    std::vector<int> out;
    while (length(c) > 0) {
      auto s = max_simple(c, left);
      if (!s) throw std::logic_error("oracle normal form: no unique maximal simple divisor");
      out.push_back(*s);
      c = quotient(*s, c, left);
    }
    if (!left) std::reverse(out.begin(), out.end());
    return out;
  }

  /// Greatest common divisor; nullopt if the longest common divisor is not unique.
  std::optional<int> gcd(int x, int y, bool left) {
    const std::set<int>& dx = divisors(x, left);
    const std::set<int> dy = divisors(y, left);
    int best = -1, best_len = -1, ties = 0;
    for (int d : dx) {
      if (!dy.count(d)) continue;
      const int l = length(d);
      if (l > best_len) best = d, best_len = l, ties = 1;
      else if (l == best_len) ++ties;
    }
    if (ties != 1) return std::nullopt;
    return best;
  }

 private:
  int rank_;
  std::vector<Relation> rels_;
  std::map<Word, int> index_;
  std::vector<std::set<Word>> classes_;
  std::map<int, std::set<int>> left_div_, right_div_;
};

/// W(A_n), W(B_n) or W(D_n) as signed permutations of 1..n (A_n acts on 1..n+1), with the
/// standard simple roots. Elements are stored as the images of 1..n.
class SignedPermGroup {
 public:
  enum class Family { A, B, D };
  SignedPermGroup(Family f, int n) : family_(f), n_(n), points_(f == Family::A ? n + 1 : n) {}

  int rank() const { return n_; }

  /// Left action w ↦ s_i w on the image vector.
  std::vector<int> apply(int i, std::vector<int> w) const {
    auto act = [&](int x) {
      const int sign = x < 0 ? -1 : 1;
      int a = std::abs(x);
      if (i < n_ - 1 || family_ == Family::A) {
        if (a == i + 1) a = i + 2;
        else if (a == i + 2) a = i + 1;
        return sign * a;
      }
      if (family_ == Family::B) return a == n_ ? -x : x;
      // D_n: α_n = e_{n-1} + e_n
      if (a == n_ - 1) return -sign * n_;
      if (a == n_) return -sign * (n_ - 1);
      return x;
    };
    for (int& x : w) x = act(x);
    return w;
  }
  std::vector<int> identity() const {
    std::vector<int> w(static_cast<std::size_t>(points_));
    for (int k = 0; k < points_; ++k) w[static_cast<std::size_t>(k)] = k + 1;
    return w;
  }
  /// Element of a word s_{w1} s_{w2} … s_{wk}.
  std::vector<int> element(const Word& word) const {
    std::vector<int> w = identity();
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = apply(*it, w);
    return w;
  }

  /// All elements with their Cayley-graph distance and a shortest word.
  struct Entry {
    int length;
    Word word;
  };
  std::map<std::vector<int>, Entry> enumerate() const {
    std::map<std::vector<int>, Entry> out;
    std::deque<std::vector<int>> queue;
    out.emplace(identity(), Entry{0, {}});
    queue.push_back(identity());
    while (!queue.empty()) {
      const std::vector<int> w = queue.front();
      queue.pop_front();
      const Entry e = out.at(w);
      for (int i = 0; i < n_; ++i) {
        std::vector<int> v = apply(i, w);
        if (out.count(v)) continue;
        Word word{i};
        word.insert(word.end(), e.word.begin(), e.word.end());
        out.emplace(v, Entry{e.length + 1, word});
        queue.push_back(v);
      }
    }
    return out;
  }

 private:
  Family family_;
  int n_;
  int points_;
};

/// Order of a product of simple reflections in the geometric representation, in floating
/// point. Suitable for spherical graphs and small orders.
inline std::optional<int> numeric_order(const coxpart::CoxeterGraph& g, const Word& word, int bound) {
  const int n = g.rank();
  using Mat = std::vector<double>;
  auto gram = [&](int i, int j) {
    if (i == j) return 1.0;
    const auto m = g.label(i, j);
    if (m.is_infinite()) return -1.0;
    return -std::cos(std::numbers::pi / m.value());
  };
  auto mul = [&](const Mat& a, const Mat& b) {
    Mat c(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    return c;
  };
  Mat id(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1.0;
  Mat w = id;
  for (int s : word) {
    // s(v) = v - 2 B(α_s, v) α_s
    Mat r = id;
    for (int j = 0; j < n; ++j) r[s * n + j] -= 2.0 * gram(s, j);
    w = mul(w, r);
  }
  Mat p = w;
  for (int k = 1; k <= bound; ++k) {
    double dev = 0;
    for (int i = 0; i < n * n; ++i) dev = std::max(dev, std::abs(p[i] - id[i]));
    if (dev < 1e-8) return k;
    p = mul(p, w);
  }
  return std::nullopt;
}

/// Greedy extension w ← w s while w(α_s) is a positive root, in floating point. In a finite
/// group this stops at the longest element; returns the length reached, capped at limit.
inline int greedy_reduced_length(const coxpart::CoxeterGraph& g, int limit) {
  const int n = g.rank();
  auto gram = [&](int i, int j) {
    if (i == j) return 1.0;
    const auto m = g.label(i, j);
    if (m.is_infinite()) return -1.0;
    return -std::cos(std::numbers::pi / m.value());
  };
  std::vector<double> w(static_cast<std::size_t>(n * n), 0.0);  // column j = w(α_j)
  for (int i = 0; i < n; ++i) w[i * n + i] = 1.0;
  for (int len = 0; len < limit; ++len) {
    int next = -1;
    for (int s = 0; s < n && next < 0; ++s) {
      bool positive = true;
      for (int i = 0; i < n; ++i) positive &= w[i * n + s] > -1e-9;
      if (positive) next = s;
    }
    if (next < 0) return len;
    // w ← w s: column j becomes w(α_j) − 2B(α_s, α_j) w(α_s)
    for (int j = 0; j < n; ++j) {
      const double c = 2.0 * gram(next, j);
      if (c == 0.0) continue;
      if (j == next) continue;
      for (int i = 0; i < n; ++i) w[i * n + j] -= c * w[i * n + next];
    }
    for (int i = 0; i < n; ++i) w[i * n + next] = -w[i * n + next];
  }
  return limit;
}

/// The columns w(α_j) of the element of a word, in floating point, when the word is
/// reduced (each next letter s has w(α_s) positive); nullopt otherwise. Two reduced words
/// of one element are braid-equivalent, so equal images decide braid equality of reduced words.
inline std::optional<std::vector<double>> reduced_image(const coxpart::CoxeterGraph& g, const Word& word) {
  const int n = g.rank();
  auto gram = [&](int i, int j) {
    if (i == j) return 1.0;
    const auto m = g.label(i, j);
    if (m.is_infinite()) return -1.0;
    return -std::cos(std::numbers::pi / m.value());
  };
  std::vector<double> w(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) w[i * n + i] = 1.0;
  for (int s : word) {
    for (int i = 0; i < n; ++i)
      if (w[i * n + s] < -1e-9) return std::nullopt;
    for (int j = 0; j < n; ++j) {
      const double c = 2.0 * gram(s, j);
      if (c == 0.0 || j == s) continue;
      for (int i = 0; i < n; ++i) w[i * n + j] -= c * w[i * n + s];
    }
    for (int i = 0; i < n; ++i) w[i * n + s] = -w[i * n + s];
  }
  return w;
}

inline bool same_reduced_element(const coxpart::CoxeterGraph& g, const Word& u, const Word& v) {
  const auto a = reduced_image(g, u), b = reduced_image(g, v);
  if (!a || !b) return false;
  for (std::size_t i = 0; i < a->size(); ++i)
    if (std::abs((*a)[i] - (*b)[i]) > 1e-7) return false;
  return true;
}

inline Word random_word(std::mt19937_64& rng, int rank, int max_length) {
  std::uniform_int_distribution<int> len(0, max_length), letter(0, rank - 1);
  Word w(static_cast<std::size_t>(len(rng)));
  for (int& x : w) x = letter(rng);
  return w;
}

}  // namespace oracle
