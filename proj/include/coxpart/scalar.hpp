#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace coxpart {

/// Integer coefficients of Ψ_N, the minimal polynomial of 2cos(π/N), lowest degree first.
/// Ψ_1 = x + 2. The result is verified exactly before it is returned.
std::vector<mpz_class> minimal_polynomial(int N);

/// Euler's totient.
int euler_phi(int n);

/// The real field ℚ(2cos(π/N)) as ℚ[x]/Ψ_N. Instances are shared and immutable.
class NumberField {
 public:
  static std::shared_ptr<const NumberField> get(int N);

  int modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(psi_.size()) - 1; }
  /// Monic Ψ_N, lowest degree first.
  const std::vector<mpq_class>& psi() const { return psi_; }
  /// Reduces a polynomial modulo Ψ_N in place; the result has exactly degree() coefficients.
  void reduce(std::vector<mpq_class>& p) const;
  /// 2cos(π/N) as a decimal string with the given number of significant digits.
  std::string generator_decimal(int digits) const;

  explicit NumberField(int N);

 private:
  int modulus_;
  std::vector<mpq_class> psi_;
};

/// An element of ℚ(2cos(π/N)): a polynomial in c = 2cos(π/N) of degree below deg Ψ_N.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(std::shared_ptr<const NumberField> field, long value);
  ExactScalar(std::shared_ptr<const NumberField> field, std::vector<mpq_class> coefficients);
  /// c itself.
  static ExactScalar generator(std::shared_ptr<const NumberField> field);
  /// 2cos(kπ/N) via the recurrence C_0 = 2, C_1 = c, C_{j+1} = c·C_j − C_{j−1}.
  static ExactScalar two_cos(std::shared_ptr<const NumberField> field, int k);

  const std::shared_ptr<const NumberField>& field() const { return field_; }
  const std::vector<mpq_class>& coefficients() const { return c_; }
  bool is_zero() const;
  /// -1, 0 or 1; exact.
  int sign() const;
  double to_double() const;
  ExactScalar inverse() const;
  std::string to_string() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  /// this -= a * b, the hot path of reflection updates.
  void sub_mul(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign() < 0; }

 private:
  void check_field(const ExactScalar& o) const;

  std::shared_ptr<const NumberField> field_;
  std::vector<mpq_class> c_;
};

}  // namespace coxpart
