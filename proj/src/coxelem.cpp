#include "coxpart/coxelem.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace coxpart {

int field_modulus(const CoxeterGraph& g) {
  int N = 1;
  for (const auto& e : g.edges())
    if (e.m.is_finite() && e.m.value() >= 3) N = std::lcm(N, static_cast<int>(e.m.value()));
  return N;
}

namespace {

constexpr int kMaxRoots = 60000;

std::vector<ExactScalar> gram_matrix(const CoxeterGraph& g, const std::shared_ptr<const NumberField>& field) {
  const int n = g.rank();
  const int N = field->modulus();
  std::vector<ExactScalar> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Label m = g.label(i, j);
      if (i == j) out.emplace_back(field, 2);
      else if (m.is_infinite()) out.emplace_back(field, -2);
      else if (m.value() == 2) out.emplace_back(field, 0);
      else out.push_back(-ExactScalar::two_cos(field, N / static_cast<int>(m.value())));
    }
  return out;
}

std::string root_key(const std::vector<ExactScalar>& v) {
  std::string key;
  for (const auto& x : v) {
    for (const auto& q : x.coefficients()) {
      key += q.get_str();
      key += ',';
    }
    key += ';';
  }
  return key;
}

int first_sign(const std::vector<ExactScalar>& v) {
  for (const auto& x : v)
    if (int s = x.sign(); s != 0) return s;
  return 0;
}

}  // namespace

RootSystem build_root_system(const CoxeterGraph& g) {
  if (!is_spherical(g)) throw InvalidInput("root system requested for a non-spherical graph");
  const int n = g.rank();
  auto field = NumberField::get(field_modulus(g));
  auto gram = gram_matrix(g, field);

  std::vector<std::vector<ExactScalar>> raw;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<int>> raw_act(static_cast<std::size_t>(n));
  auto intern = [&](std::vector<ExactScalar> v) {
    auto key = root_key(v);
    auto [it, fresh] = index.emplace(key, static_cast<int>(raw.size()));
    if (fresh) {
      if (raw.size() >= static_cast<std::size_t>(kMaxRoots)) throw InvalidInput("root system too large");
      raw.push_back(std::move(v));
    }
    return it->second;
  };
  for (int i = 0; i < n; ++i) {
    std::vector<ExactScalar> e(static_cast<std::size_t>(n), ExactScalar(field, 0));
    e[static_cast<std::size_t>(i)] = ExactScalar(field, 1);
    intern(std::move(e));
  }
  for (std::size_t r = 0; r < raw.size(); ++r) {
    for (int i = 0; i < n; ++i) {
      std::vector<ExactScalar> v = raw[r];
      ExactScalar& vi = v[static_cast<std::size_t>(i)];
      ExactScalar pairing(field, 0);
      for (int j = 0; j < n; ++j) pairing += gram[static_cast<std::size_t>(i * n + j)] * raw[r][static_cast<std::size_t>(j)];
      vi -= pairing;
      int target = intern(std::move(v));
      raw_act[static_cast<std::size_t>(i)].push_back(target);
    }
  }

  RootSystem rs;
  const int total = static_cast<int>(raw.size());
  std::vector<int> renum(static_cast<std::size_t>(total), -1);
  std::vector<int> positives;
  for (int r = 0; r < total; ++r)
    if (first_sign(raw[static_cast<std::size_t>(r)]) > 0) positives.push_back(r);
  const int P = static_cast<int>(positives.size());
  if (2 * P != total) throw std::logic_error("root system is not symmetric under negation");
  for (int k = 0; k < P; ++k) {
    int r = positives[static_cast<std::size_t>(k)];
    renum[static_cast<std::size_t>(r)] = k;
    std::vector<ExactScalar> neg = raw[static_cast<std::size_t>(r)];
    for (auto& x : neg) x = -x;
    auto it = index.find(root_key(neg));
    if (it == index.end()) throw std::logic_error("root system is missing a negative root");
    renum[static_cast<std::size_t>(it->second)] = k + P;
  }
  rs.num_positive_ = P;
  rs.roots_.resize(static_cast<std::size_t>(total));
  for (int r = 0; r < total; ++r) rs.roots_[static_cast<std::size_t>(renum[static_cast<std::size_t>(r)])] = raw[static_cast<std::size_t>(r)];
  for (int i = 0; i < n; ++i) rs.simple_.push_back(renum[static_cast<std::size_t>(i)]);
  rs.action_.assign(static_cast<std::size_t>(n), std::vector<std::uint16_t>(static_cast<std::size_t>(total)));
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < total; ++r)
      rs.action_[static_cast<std::size_t>(i)][static_cast<std::size_t>(renum[static_cast<std::size_t>(r)])] =
          static_cast<std::uint16_t>(renum[static_cast<std::size_t>(raw_act[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)])]);
  return rs;
}

// ---------------------------------------------------------------------------

CoxeterSystem::CoxeterSystem(const CoxeterGraph& g, Backend b)
    : graph_(g), backend_(b), spherical_(is_spherical(g)), field_(NumberField::get(field_modulus(g))) {
  gram2_ = gram_matrix(g, field_);
  if (b == Backend::RootPerm) {
    if (!spherical_) throw InvalidInput("RootPerm backend needs a spherical graph");
    roots_ = build_root_system(g);
  }
}

std::shared_ptr<const CoxeterSystem> CoxeterSystem::get(const CoxeterGraph& g, std::optional<Backend> force) {
  Backend b = force.value_or(is_spherical(g) ? Backend::RootPerm : Backend::RepMatrix);
  std::string key = b == Backend::RootPerm ? "P|" : "M|";
  for (const auto& v : g.vertices()) key += v + ",";
  key += "|";
  for (const auto& e : g.edges()) key += e.a + "," + e.b + "," + e.m.to_string() + ";";

  static std::mutex mu;
  static std::unordered_map<std::string, std::shared_ptr<const CoxeterSystem>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto sys = std::make_shared<const CoxeterSystem>(g, b);
  std::lock_guard lock(mu);
  return cache.emplace(key, sys).first->second;
}

const RootSystem& CoxeterSystem::root_system() const {
  if (!roots_) throw std::logic_error("no root system for the RepMatrix backend");
  return *roots_;
}

CoxElement CoxeterSystem::identity() const {
  auto self = shared_from_this();
  if (backend_ == Backend::RootPerm) {
    std::vector<std::uint16_t> id(static_cast<std::size_t>(roots_->size()));
    std::iota(id.begin(), id.end(), std::uint16_t{0});
    return CoxElement(self, CoxElement::Perm{id, id}, 0);
  }
  const int n = rank();
  std::vector<ExactScalar> id(static_cast<std::size_t>(n * n), ExactScalar(field_, 0));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i * n + i)] = ExactScalar(field_, 1);
  return CoxElement(self, CoxElement::Matrix{id, id}, 0);
}

CoxElement CoxeterSystem::generator(int i) const {
  CoxElement w = identity();
  w.mul_right(i);
  return w;
}

CoxElement CoxeterSystem::from_word(std::span<const int> word) const {
  CoxElement w = identity();
  for (int i : word) {
    if (i < 0 || i >= rank()) throw InvalidInput("generator index out of range");
    w.mul_right(i);
  }
  return w;
}

CoxElement CoxeterSystem::from_names(std::span<const std::string> word) const {
  std::vector<int> idx;
  for (const auto& s : word) idx.push_back(graph_.index_of(s));
  return from_word(idx);
}

CoxElement CoxeterSystem::longest(VertexSet J) const {
  if (!J.subset_of(graph_.all())) throw InvalidInput("longest: subset contains unknown vertices");
  if (!is_spherical(graph_, J)) throw InvalidInput("longest element of a non-spherical subset");
  CoxElement w = identity();
  for (;;) {
    VertexSet asc = J - w.descents(Side::Right);
    if (asc.empty()) return w;
    w.mul_right(asc.first());
  }
}

// ---------------------------------------------------------------------------

namespace {

// Sign of the first nonzero entry of column i of an n×n row-major matrix.
bool column_negative(const std::vector<ExactScalar>& m, int n, int i) {
  for (int r = 0; r < n; ++r) {
    int s = m[static_cast<std::size_t>(r * n + i)].sign();
    if (s != 0) return s < 0;
  }
  throw std::logic_error("zero column in a reflection matrix");
}

// m ← m·S_i
void right_reflect(const CoxeterSystem& sys, std::vector<ExactScalar>& m, int i) {
  const int n = sys.rank();
  for (int k = 0; k < n; ++k) {
    if (k == i) continue;
    const ExactScalar& b = sys.gram2(i, k);
    if (b.is_zero()) continue;
    for (int r = 0; r < n; ++r)
      m[static_cast<std::size_t>(r * n + k)].sub_mul(b, m[static_cast<std::size_t>(r * n + i)]);
  }
  for (int r = 0; r < n; ++r) {
    auto& x = m[static_cast<std::size_t>(r * n + i)];
    x = -x;
  }
}

// m ← S_i·m
void left_reflect(const CoxeterSystem& sys, std::vector<ExactScalar>& m, int i) {
  const int n = sys.rank();
  for (int c = 0; c < n; ++c) {
    ExactScalar v = -m[static_cast<std::size_t>(i * n + c)];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const ExactScalar& b = sys.gram2(i, j);
      if (b.is_zero()) continue;
      v.sub_mul(b, m[static_cast<std::size_t>(j * n + c)]);
    }
    m[static_cast<std::size_t>(i * n + c)] = std::move(v);
  }
}

}  // namespace

bool CoxElement::is_descent(int i, Side side) const {
  if (const Perm* p = perm()) {
    const RootSystem& rs = sys_->root_system();
    const auto& table = side == Side::Right ? p->fwd : p->inv;
    return !rs.is_positive(table[static_cast<std::size_t>(rs.simple(i))]);
  }
  const Matrix& mx = std::get<Matrix>(data_);
  return column_negative(side == Side::Right ? mx.m : mx.inv, rank(), i);
}

VertexSet CoxElement::descents(Side side) const {
  VertexSet s;
  if (length_ == 0) return s;
  for (int i = 0; i < rank(); ++i)
    if (is_descent(i, side)) s.insert(i);
  return s;
}

void CoxElement::multiply(int i, Side side) {
  bool down = is_descent(i, side);
  if (Perm* p = std::get_if<Perm>(&data_)) {
    const auto& act = sys_->root_system().action(i);
    const std::size_t total = act.size();
    std::vector<std::uint16_t> fwd(total), inv(total);
    if (side == Side::Right) {
      for (std::size_t r = 0; r < total; ++r) {
        fwd[r] = p->fwd[act[r]];
        inv[r] = act[p->inv[r]];
      }
    } else {
      for (std::size_t r = 0; r < total; ++r) {
        fwd[r] = act[p->fwd[r]];
        inv[r] = p->inv[act[r]];
      }
    }
    p->fwd = std::move(fwd);
    p->inv = std::move(inv);
  } else {
    Matrix& mx = std::get<Matrix>(data_);
    if (side == Side::Right) {
      right_reflect(*sys_, mx.m, i);
      left_reflect(*sys_, mx.inv, i);
    } else {
      left_reflect(*sys_, mx.m, i);
      right_reflect(*sys_, mx.inv, i);
    }
  }
  length_ += down ? -1 : 1;
}

CoxElement CoxElement::inverse() const {
  CoxElement w = *this;
  if (Perm* p = std::get_if<Perm>(&w.data_)) std::swap(p->fwd, p->inv);
  else {
    Matrix& mx = std::get<Matrix>(w.data_);
    std::swap(mx.m, mx.inv);
  }
  return w;
}

CoxElement operator*(const CoxElement& a, const CoxElement& b) {
  if (!(a.sys_ == b.sys_)) throw InvalidInput("product of elements of different Coxeter systems");
  if (const auto* pa = a.perm()) {
    const auto* pb = b.perm();
    const RootSystem& rs = a.sys_->root_system();
    const std::size_t total = pa->fwd.size();
    CoxElement::Perm out{std::vector<std::uint16_t>(total), std::vector<std::uint16_t>(total)};
    int len = 0;
    for (std::size_t r = 0; r < total; ++r) {
      out.fwd[r] = pa->fwd[pb->fwd[r]];
      out.inv[r] = pb->inv[pa->inv[r]];
    }
    for (int r = 0; r < rs.num_positive(); ++r)
      if (!rs.is_positive(out.fwd[static_cast<std::size_t>(r)])) ++len;
    return CoxElement(a.sys_, std::move(out), len);
  }
  CoxElement w = a;
  for (int i : b.reduced_word()) w.mul_right(i);
  return w;
}

std::vector<int> CoxElement::reduced_word() const {
  std::vector<int> word;
  CoxElement w = *this;
  while (w.length_ > 0) {
    int i = w.descents(Side::Right).first();
    word.push_back(i);
    w.mul_right(i);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<std::string> CoxElement::reduced_word_names() const {
  std::vector<std::string> out;
  for (int i : reduced_word()) out.push_back(sys_->graph().name(i));
  return out;
}

int CoxElement::walk_length(int ceiling) const {
  CoxElement w = *this;
  int steps = 0;
  for (;;) {
    VertexSet d;
    for (int i = 0; i < rank(); ++i)
      if (w.is_descent(i, Side::Right)) d.insert(i);
    if (d.empty()) break;
    if (++steps > ceiling) throw std::logic_error("descent walk exceeded its step ceiling");
    w.mul_right(d.first());
  }
  return steps;
}

VertexSet CoxElement::support() const {
  VertexSet s;
  for (int i : reduced_word()) s.insert(i);
  return s;
}

std::vector<ExactScalar> CoxElement::image_of_simple(int i) const {
  if (const Perm* p = perm()) {
    const RootSystem& rs = sys_->root_system();
    return rs.roots()[p->fwd[static_cast<std::size_t>(rs.simple(i))]];
  }
  const Matrix& mx = std::get<Matrix>(data_);
  std::vector<ExactScalar> col;
  for (int r = 0; r < rank(); ++r) col.push_back(mx.m[static_cast<std::size_t>(r * rank() + i)]);
  return col;
}

std::size_t CoxElement::hash() const {
  std::size_t h = static_cast<std::size_t>(length_) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  if (const Perm* p = perm()) {
    const RootSystem& rs = sys_->root_system();
    for (int i = 0; i < rank(); ++i) mix(p->fwd[static_cast<std::size_t>(rs.simple(i))]);
  } else {
    for (const auto& x : std::get<Matrix>(data_).m)
      for (const auto& q : x.coefficients()) {
        mix(mpz_get_ui(q.get_num_mpz_t()));
        mix(mpz_get_ui(q.get_den_mpz_t()));
      }
  }
  return h;
}

bool operator==(const CoxElement& a, const CoxElement& b) {
  if (a.length_ != b.length_) return false;
  if (a.sys_ != b.sys_) return a.sys_->graph() == b.sys_->graph() && a.reduced_word() == b.reduced_word();
  if (const auto* pa = a.perm()) {
    const RootSystem& rs = a.sys_->root_system();
    for (int i = 0; i < a.rank(); ++i) {
      auto s = static_cast<std::size_t>(rs.simple(i));
      if (pa->fwd[s] != b.perm()->fwd[s]) return false;
    }
    return true;
  }
  return a.matrix()->m == b.matrix()->m;
}

// ---------------------------------------------------------------------------

CoxElement element_from_word(const CoxeterGraph& g, std::span<const std::string> word) {
  return CoxeterSystem::get(g)->from_names(word);
}

int length(const CoxElement& w) { return w.length(); }

VertexSet descents(const CoxElement& w, Side side) { return w.descents(side); }

CoxElement longest_element(const CoxeterGraph& g, VertexSet J) { return CoxeterSystem::get(g)->longest(J); }

std::optional<int> order_of(const CoxElement& w, int bound) {
  CoxElement p = w;
  for (int n = 1; n <= bound; ++n) {
    if (p.is_identity()) return n;
    p = p * w;
  }
  return std::nullopt;
}

VertexSet support(const CoxElement& w) { return w.support(); }

std::size_t compatible_prefix(const CoxeterSystem& sys, std::span<const VertexSet> word) {
  std::map<VertexSet, CoxElement> longest;
  CoxElement w = sys.identity();
  for (std::size_t k = 0; k < word.size(); ++k) {
    VertexSet a = word[k];
    if (w.descents(Side::Right).intersects(a)) return k;
    auto it = longest.find(a);
    if (it == longest.end()) it = longest.emplace(a, sys.longest(a)).first;
    w = w * it->second;
  }
  return word.size();
}

bool is_compatible(const CoxeterSystem& sys, std::span<const VertexSet> word) {
  return compatible_prefix(sys, word) == word.size();
}

BlockWord alternating(VertexSet a, VertexSet b, int n) {
  BlockWord w;
  for (int k = 0; k < n; ++k) w.push_back(k % 2 == 0 ? a : b);
  return w;
}

bool tits_oracle(const CoxeterGraph& g, const std::vector<int>& word1, const std::vector<int>& word2,
                 std::size_t max_states) {
  if (word1.size() != word2.size()) return false;
  if (word1 == word2) return true;
  struct Rel {
    std::vector<int> from, to;
  };
  std::vector<Rel> rels;
  for (int i = 0; i < g.rank(); ++i)
    for (int j = 0; j < g.rank(); ++j) {
      if (i == j || g.label(i, j).is_infinite()) continue;
      int m = static_cast<int>(g.label(i, j).value());
      Rel r;
      for (int k = 0; k < m; ++k) {
        r.from.push_back(k % 2 == 0 ? i : j);
        r.to.push_back(k % 2 == 0 ? j : i);
      }
      rels.push_back(std::move(r));
    }
  std::set<std::vector<int>> seen{word1};
  std::deque<std::vector<int>> queue{word1};
  while (!queue.empty()) {
    std::vector<int> w = std::move(queue.front());
    queue.pop_front();
    for (const auto& r : rels) {
      if (r.from.size() > w.size()) continue;
      for (std::size_t p = 0; p + r.from.size() <= w.size(); ++p) {
        if (!std::equal(r.from.begin(), r.from.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) continue;
        std::vector<int> v = w;
        std::copy(r.to.begin(), r.to.end(), v.begin() + static_cast<std::ptrdiff_t>(p));
        if (v == word2) return true;
        if (seen.insert(v).second) {
          if (seen.size() > max_states) throw std::length_error("tits_oracle: search space exceeded");
          queue.push_back(std::move(v));
        }
      }
    }
  }
  return false;
}

}  // namespace coxpart
