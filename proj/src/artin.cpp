#include "coxpart/artin.hpp"

#include <algorithm>

namespace coxpart {

namespace {

// Moves letters of v into u until D_L(v) ⊆ D_R(u). Returns whether anything moved.
bool fix_pair(Simple& u, Simple& v) {
  bool changed = false;
  for (;;) {
    VertexSet bad = v.descents(Side::Left) - u.descents(Side::Right);
    if (bad.empty()) return changed;
    int i = bad.first();
    u.mul_right(i);
    v.mul_left(i);
    changed = true;
  }
}

void drop_identities(std::vector<Simple>& f) {
  f.erase(std::remove_if(f.begin(), f.end(), [](const Simple& s) { return s.is_identity(); }), f.end());
}

// Strips the atom i (a left divisor) from the left of x.
PosBraid strip_left(const PosBraid& x, int i) {
  std::vector<Simple> f = x.factors();
  f.front().mul_left(i);
  return normalize(x.system_ptr(), std::move(f));
}

void check_same(const PosBraid& a, const PosBraid& b) {
  if (a.system_ptr() != b.system_ptr() && !(a.system().graph() == b.system().graph()))
    throw InvalidInput("braids over different graphs");
}

}  // namespace

bool is_left_weighted(const Simple& u, const Simple& v) { return v.descents(Side::Left).subset_of(u.descents(Side::Right)); }

bool is_normal_form(const std::vector<Simple>& factors) {
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].is_identity()) return false;
    if (k + 1 < factors.size() && !is_left_weighted(factors[k], factors[k + 1])) return false;
  }
  return true;
}

PosBraid normalize(const std::shared_ptr<const CoxeterSystem>& sys, std::vector<Simple> seq) {
  PosBraid out(sys);
  auto& f = out.factors_;
  for (auto& s : seq) {
    if (s.system_ptr() != sys && !(s.system().graph() == sys->graph()))
      throw InvalidInput("normalize: simple over a different graph");
    if (s.is_identity()) continue;
    f.push_back(std::move(s));
    for (std::size_t k = f.size() - 1; k-- > 0;)
      if (!fix_pair(f[k], f[k + 1])) break;
    drop_identities(f);
  }
  // The right-to-left pass above already yields the normal form; keep sweeping until stable
  // in case it did not.
  while (!is_normal_form(f)) {
    for (std::size_t k = f.size(); k-- > 1;) fix_pair(f[k - 1], f[k]);
    drop_identities(f);
  }
  return out;
}

PosBraid PosBraid::atom(const std::shared_ptr<const CoxeterSystem>& sys, int i) {
  PosBraid x(sys);
  x.factors_.push_back(sys->generator(i));
  return x;
}

PosBraid PosBraid::from_word(const std::shared_ptr<const CoxeterSystem>& sys, std::span<const int> word) {
  std::vector<Simple> seq;
  for (int i : word) {
    if (i < 0 || i >= sys->rank()) throw InvalidInput("generator index out of range");
    seq.push_back(sys->generator(i));
  }
  return normalize(sys, std::move(seq));
}

PosBraid PosBraid::from_names(const std::shared_ptr<const CoxeterSystem>& sys, std::span<const std::string> word) {
  std::vector<int> idx;
  for (const auto& s : word) idx.push_back(sys->graph().index_of(s));
  return from_word(sys, idx);
}

PosBraid PosBraid::from_simples(const std::shared_ptr<const CoxeterSystem>& sys, std::vector<Simple> simples) {
  return normalize(sys, std::move(simples));
}

int PosBraid::length() const {
  int n = 0;
  for (const auto& s : factors_) n += s.length();
  return n;
}

std::vector<int> PosBraid::word() const {
  std::vector<int> w;
  for (const auto& s : factors_) {
    auto r = s.reduced_word();
    w.insert(w.end(), r.begin(), r.end());
  }
  return w;
}

CoxElement PosBraid::projection() const {
  CoxElement w = sys_->identity();
  for (const auto& s : factors_) w = w * s;
  return w;
}

PosBraid PosBraid::reversed() const {
  std::vector<Simple> seq;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) seq.push_back(it->inverse());
  return normalize(sys_, std::move(seq));
}

std::vector<std::vector<std::string>> PosBraid::factor_names() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : factors_) out.push_back(s.reduced_word_names());
  return out;
}

std::string PosBraid::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& f : factor_names()) {
    out += "[";
    for (std::size_t k = 0; k < f.size(); ++k) out += (k ? " " : "") + f[k];
    out += "]";
  }
  return out;
}

std::size_t PosBraid::hash() const {
  std::size_t h = factors_.size();
  for (const auto& s : factors_) h ^= s.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool operator==(const PosBraid& a, const PosBraid& b) { return a.factors_ == b.factors_; }

PosBraid lift(const CoxElement& w) { return normalize(w.system_ptr(), {w}); }

PosBraid multiply(const PosBraid& x, const PosBraid& y) {
  check_same(x, y);
  std::vector<Simple> seq = x.factors();
  seq.insert(seq.end(), y.factors().begin(), y.factors().end());
  return normalize(x.system_ptr(), std::move(seq));
}

PosBraid operator*(const PosBraid& x, const PosBraid& y) { return multiply(x, y); }

std::vector<Simple> right_normal_form(const PosBraid& x) {
  std::vector<Simple> out;
  const PosBraid r = x.reversed();
  const auto& f = r.factors();
  for (auto it = f.rbegin(); it != f.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Simple max_simple_divisor(const PosBraid& x, Side side) {
  if (x.is_identity()) return x.system().identity();
  if (side == Side::Left) return x.factors().front();
  return right_normal_form(x).back();
}

bool divides(const PosBraid& d, const PosBraid& x, Side side) {
  check_same(d, x);
  if (side == Side::Right) return divides(d.reversed(), x.reversed(), Side::Left);
  PosBraid rest = x;
  for (int i : d.word()) {
    if (rest.is_identity() || !rest.factors().front().is_descent(i, Side::Left)) return false;
    rest = strip_left(rest, i);
  }
  return true;
}

PosBraid cancel(const PosBraid& d, const PosBraid& x, Side side) {
  check_same(d, x);
  if (side == Side::Right) return cancel(d.reversed(), x.reversed(), Side::Left).reversed();
  PosBraid rest = x;
  for (int i : d.word()) {
    if (rest.is_identity() || !rest.factors().front().is_descent(i, Side::Left))
      throw InvalidInput("cancel: not a divisor");
    rest = strip_left(rest, i);
  }
  return rest;
}

PosBraid gcd(const PosBraid& x, const PosBraid& y, Side side) {
  check_same(x, y);
  if (side == Side::Right) return gcd(x.reversed(), y.reversed(), Side::Left).reversed();
  std::vector<int> common;
  PosBraid a = x, b = y;
  while (!a.is_identity() && !b.is_identity()) {
    VertexSet both = a.factors().front().descents(Side::Left) & b.factors().front().descents(Side::Left);
    if (both.empty()) break;
    int i = both.first();
    common.push_back(i);
    a = strip_left(a, i);
    b = strip_left(b, i);
  }
  return PosBraid::from_word(x.system_ptr(), common);
}

namespace {

// Right word reversing of u^{-1}v. Letters are ±(i+1). Returns the positive part P with
// u·P = v·N, or nullopt on an ∞ label or when the step bound runs out.
std::optional<std::vector<int>> reverse_right(const CoxeterGraph& g, const std::vector<int>& u,
                                              const std::vector<int>& v, int step_bound) {
  std::vector<int> w;
  for (auto it = u.rbegin(); it != u.rend(); ++it) w.push_back(-(*it + 1));
  for (int i : v) w.push_back(i + 1);
  int steps = 0;
  std::size_t p = 0;
  for (;;) {
    // Leftmost pattern s_i^{-1} s_j; nothing left of the previous rewrite can match.
    while (p + 1 < w.size() && !(w[p] < 0 && w[p + 1] > 0)) ++p;
    if (p + 1 >= w.size()) break;
    if (++steps > step_bound) return std::nullopt;
    int i = -w[p] - 1, j = w[p + 1] - 1;
    std::vector<int> repl;
    if (i != j) {
      Label m = g.label(i, j);
      if (m.is_infinite()) return std::nullopt;
      int k = static_cast<int>(m.value()) - 1;
      for (int t = 0; t < k; ++t) repl.push_back((t % 2 == 0 ? j : i) + 1);
      for (int t = k; t-- > 0;) repl.push_back(-((t % 2 == 0 ? i : j) + 1));
    }
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(p), w.begin() + static_cast<std::ptrdiff_t>(p + 2));
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(p), repl.begin(), repl.end());
    p = p > 0 ? p - 1 : 0;
  }
  std::vector<int> positive;
  for (int c : w) {
    if (c < 0) break;
    positive.push_back(c - 1);
  }
  return positive;
}

PosBraid garside_power(const std::shared_ptr<const CoxeterSystem>& sys, std::size_t k) {
  Simple delta = sys->longest(sys->graph().all());
  return normalize(sys, std::vector<Simple>(k, delta));
}

}  // namespace

std::optional<PosBraid> lcm(const PosBraid& x, const PosBraid& y, Side side, int step_bound) {
  check_same(x, y);
  if (side == Side::Left) {
    auto r = lcm(x.reversed(), y.reversed(), Side::Right, step_bound);
    if (!r) return std::nullopt;
    return r->reversed();
  }
  const auto& sys = x.system_ptr();
  if (auto pos = reverse_right(sys->graph(), x.word(), y.word(), step_bound))
    return multiply(x, PosBraid::from_word(sys, *pos));
  if (!sys->spherical()) return std::nullopt;
  // Both divide Δ^k; the lcm is Δ^k with the right gcd of the complements removed.
  std::size_t k = std::max(x.factors().size(), y.factors().size());
  PosBraid dk = garside_power(sys, k);
  PosBraid xc = cancel(x, dk, Side::Left);
  PosBraid yc = cancel(y, dk, Side::Left);
  return cancel(gcd(xc, yc, Side::Right), dk, Side::Right);
}

std::optional<PosBraid> lcm_atoms(const std::shared_ptr<const CoxeterSystem>& sys, VertexSet J) {
  if (J.empty()) throw InvalidInput("lcm_atoms: empty vertex set");
  if (!is_spherical(sys->graph(), J)) return std::nullopt;
  return lift(sys->longest(J));
}

FractionPair irreducible_fraction(const PosBraid& x, const PosBraid& y, Side side) {
  check_same(x, y);
  if (!x.system().spherical()) throw InvalidInput("irreducible fractions need a spherical graph");
  PosBraid d = gcd(x, y, side);
  return {cancel(d, x, side), cancel(d, y, side), side};
}

}  // namespace coxpart
