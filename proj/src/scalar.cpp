#include "coxpart/scalar.hpp"

#include <mpfr.h>

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace coxpart {

namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// 2cos(kπ/N) at the given precision.
void two_cos_pi(mpfr_ptr out, long k, long N, mpfr_prec_t prec) {
  Mpfr t(prec + 16);
  mpfr_const_pi(t.get(), MPFR_RNDN);
  mpfr_mul_si(t.get(), t.get(), k, MPFR_RNDN);
  mpfr_div_si(t.get(), t.get(), N, MPFR_RNDN);
  mpfr_cos(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_2ui(out, t.get(), 1, MPFR_RNDN);
}

using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a by monic-or-not b (b nonzero, trimmed).
Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    mpq_class f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Chebyshev-type C_k with C_k(2cos t) = 2cos(kt).
Poly chebyshev_c(int k) {
  Poly c0{2}, c1{0, 1};
  if (k == 0) return c0;
  for (int j = 1; j < k; ++j) {
    Poly next(c1.size() + 1, 0);
    for (std::size_t i = 0; i < c1.size(); ++i) next[i + 1] += c1[i];
    for (std::size_t i = 0; i < c0.size(); ++i) next[i] -= c0[i];
    c0 = std::move(c1);
    c1 = std::move(next);
  }
  return c1;
}

}  // namespace

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<mpz_class> minimal_polynomial(int N) {
  if (N < 1) throw std::invalid_argument("minimal_polynomial: N must be positive");
  if (N == 1) return {2, 1};
  const mpfr_prec_t prec = 256;
  // Coefficients of ∏(x − r_k), built by repeated multiplication by linear factors.
  std::vector<std::unique_ptr<Mpfr>> coef;
  coef.push_back(std::make_unique<Mpfr>(prec));
  mpfr_set_ui(coef[0]->get(), 1, MPFR_RNDN);
  Mpfr root(prec), tmp(prec);
  for (int k = 1; k < N; ++k) {
    if (std::gcd(k, 2 * N) != 1) continue;
    two_cos_pi(root.get(), k, N, prec);
    coef.push_back(std::make_unique<Mpfr>(prec));
    mpfr_set_ui(coef.back()->get(), 0, MPFR_RNDN);
    for (std::size_t i = coef.size() - 1; i > 0; --i) {
      // new[i] = old[i-1] − r·old[i]
      mpfr_mul(tmp.get(), root.get(), coef[i]->get(), MPFR_RNDN);
      mpfr_sub(coef[i]->get(), coef[i - 1]->get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_mul(coef[0]->get(), coef[0]->get(), root.get(), MPFR_RNDN);
    mpfr_neg(coef[0]->get(), coef[0]->get(), MPFR_RNDN);
  }
  std::vector<mpz_class> psi;
  for (auto& a : coef) {
    mpz_class z;
    mpfr_round(a->get(), a->get());
    mpfr_get_z(z.get_mpz_t(), a->get(), MPFR_RNDN);
    psi.push_back(z);
  }

  if (static_cast<int>(psi.size()) - 1 != euler_phi(2 * N) / 2)
    throw std::logic_error("minimal_polynomial: degree mismatch");
  Poly target = chebyshev_c(N);
  target[0] += 2;
  Poly divisor(psi.begin(), psi.end());
  if (!poly_mod(target, divisor).empty())
    throw std::logic_error("minimal_polynomial: candidate does not divide C_N + 2");
  return psi;
}

NumberField::NumberField(int N) : modulus_(N) {
  for (const auto& z : minimal_polynomial(N)) psi_.emplace_back(z);
}

std::shared_ptr<const NumberField> NumberField::get(int N) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const NumberField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[N];
  if (!slot) slot = std::make_shared<const NumberField>(N);
  return slot;
}

void NumberField::reduce(std::vector<mpq_class>& p) const {
  const std::size_t d = psi_.size() - 1;
  for (std::size_t top = p.size(); top-- > d;) {
    if (p[top] == 0) continue;
    mpq_class f = p[top];
    for (std::size_t i = 0; i < d; ++i) p[top - d + i] -= f * psi_[i];
    p[top] = 0;
  }
  p.resize(d, 0);
}

std::string NumberField::generator_decimal(int digits) const {
  Mpfr c(static_cast<mpfr_prec_t>(digits * 4 + 32));
  two_cos_pi(c.get(), 1, modulus_, mpfr_get_prec(c.get()));
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, c.get());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

ExactScalar::ExactScalar(std::shared_ptr<const NumberField> field, long value) : field_(std::move(field)) {
  c_.assign(static_cast<std::size_t>(field_->degree()), 0);
  c_[0] = value;
}

ExactScalar::ExactScalar(std::shared_ptr<const NumberField> field, std::vector<mpq_class> coefficients)
    : field_(std::move(field)), c_(std::move(coefficients)) {
  field_->reduce(c_);
}

ExactScalar ExactScalar::generator(std::shared_ptr<const NumberField> field) {
  return ExactScalar(std::move(field), std::vector<mpq_class>{0, 1});
}

ExactScalar ExactScalar::two_cos(std::shared_ptr<const NumberField> field, int k) {
  Poly p = chebyshev_c(k);
  return ExactScalar(std::move(field), std::move(p));
}

void ExactScalar::check_field(const ExactScalar& o) const {
  if (field_ != o.field_) throw std::logic_error("ExactScalar: mixing different fields");
}

bool ExactScalar::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

int ExactScalar::sign() const {
  if (is_zero()) return 0;
  if (c_.size() == 1) return sgn(c_[0]);
  // Evaluate at increasing precision until the error bound separates the value from zero.
  for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
    Mpfr c(prec), acc(prec), term(prec), bound(64), t64(64);
    two_cos_pi(c.get(), 1, field_->modulus(), prec);
    mpfr_set_ui(acc.get(), 0, MPFR_RNDN);
    mpfr_set_ui(bound.get(), 0, MPFR_RNDN);
    for (std::size_t k = c_.size(); k-- > 0;) {
      mpfr_mul(acc.get(), acc.get(), c.get(), MPFR_RNDN);
      mpfr_set_q(term.get(), c_[k].get_mpq_t(), MPFR_RNDN);
      mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
      // |a_k|(k+1)3^k
      mpfr_set_q(t64.get(), c_[k].get_mpq_t(), MPFR_RNDU);
      mpfr_abs(t64.get(), t64.get(), MPFR_RNDU);
      mpfr_mul_ui(t64.get(), t64.get(), static_cast<unsigned long>(k + 1), MPFR_RNDU);
      for (std::size_t j = 0; j < k; ++j) mpfr_mul_ui(t64.get(), t64.get(), 3, MPFR_RNDU);
      mpfr_add(bound.get(), bound.get(), t64.get(), MPFR_RNDU);
    }
    mpfr_mul_2si(bound.get(), bound.get(), -static_cast<long>(prec) + 8, MPFR_RNDU);
    Mpfr mag(prec);
    mpfr_abs(mag.get(), acc.get(), MPFR_RNDN);
    if (mpfr_greater_p(mag.get(), bound.get())) return mpfr_sgn(acc.get()) > 0 ? 1 : -1;
  }
  throw std::logic_error("ExactScalar::sign: precision cap reached for a nonzero value");
}

double ExactScalar::to_double() const {
  Mpfr c(128), acc(128), term(128);
  two_cos_pi(c.get(), 1, field_->modulus(), 128);
  mpfr_set_ui(acc.get(), 0, MPFR_RNDN);
  for (std::size_t k = c_.size(); k-- > 0;) {
    mpfr_mul(acc.get(), acc.get(), c.get(), MPFR_RNDN);
    mpfr_set_q(term.get(), c_[k].get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
  }
  return mpfr_get_d(acc.get(), MPFR_RNDN);
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("ExactScalar: inverse of zero");
  // Extended Euclid on (Ψ, a): track s with s·a ≡ r (mod Ψ).
  Poly r0 = field_->psi(), r1 = c_;
  Poly s0{}, s1{1};
  trim(r1);
  while (!(r1.size() == 1)) {
    // q = r0 / r1, r = r0 − q·r1
    Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    Poly r = r0;
    trim(r);
    while (r.size() >= r1.size()) {
      mpq_class f = r.back() / r1.back();
      std::size_t shift = r.size() - r1.size();
      q[shift] += f;
      for (std::size_t i = 0; i < r1.size(); ++i) r[shift + i] -= f * r1[i];
      r.pop_back();
      trim(r);
    }
    Poly qs = poly_mul(q, s1);
    Poly s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw std::logic_error("ExactScalar::inverse: Ψ is not irreducible");
  }
  mpq_class k = r1[0];
  for (auto& x : s1) x /= k;
  return ExactScalar(field_, std::move(s1));
}

std::string ExactScalar::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!out.empty()) out += c_[k] > 0 ? " + " : " - ";
    else if (c_[k] < 0) out += "-";
    mpq_class a = abs(c_[k]);
    if (k == 0 || a != 1) out += a.get_str();
    if (k >= 1) out += (k == 0 || a != 1 ? "*c" : "c");
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  check_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  check_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  check_field(o);
  if (c_.size() == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  Poly p = poly_mul(c_, o.c_);
  field_->reduce(p);
  c_ = std::move(p);
  return *this;
}

void ExactScalar::sub_mul(const ExactScalar& a, const ExactScalar& b) {
  check_field(a);
  check_field(b);
  if (c_.size() == 1) {
    c_[0] -= a.c_[0] * b.c_[0];
    return;
  }
  *this -= a * b;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  a.check_field(b);
  return a.c_ == b.c_;
}

}  // namespace coxpart
