#ifndef QGK_QPOLY_HPP
#define QGK_QPOLY_HPP

#include <map>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

namespace qgk {

using Rational = mpq_class;
using Integer = mpz_class;

// Exact Laurent polynomial in q^(1/2). A term with half-exponent k is
// c * q^(k/2). Zero coefficients are never stored.
class QPoly {
 public:
  using Terms = std::map<int, Rational>;

  QPoly() = default;
  QPoly(long c);  // NOLINT: constants convert implicitly
  QPoly(const Rational& c);  // NOLINT
  static QPoly monomial(const Rational& c, int half_exp);
  // q^n, i.e. half-exponent 2n.
  static QPoly q_pow(int n) { return monomial(1, 2 * n); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(int half_exp) const;
  void add_term(int half_exp, const Rational& c);

  // Largest / smallest half-exponent; undefined on zero.
  int max_half_exp() const { return terms_.rbegin()->first; }
  int min_half_exp() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.rbegin()->second; }

  bool has_integer_coeffs() const;
  bool has_nonnegative_coeffs() const;
  bool only_even_half_exps() const;
  // Only integral, nonnegative powers of q.
  bool is_polynomial_in_q() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const Rational& c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const Rational& c) { return a *= c; }
  friend QPoly operator*(const Rational& c, QPoly a) { return a *= c; }
  friend QPoly operator*(QPoly a, long c) { return a *= Rational(c); }
  friend QPoly operator*(long c, QPoly a) { return a *= Rational(c); }
  QPoly operator-() const;
  friend bool operator==(const QPoly&, const QPoly&) = default;

  // Text form, e.g. "q^-1 + 2 + q" or "1/2*q^(1/2)".
  std::string str() const;
  nlohmann::json to_json() const;
  static QPoly from_json(const nlohmann::json& j);

 private:
  Terms terms_;
};

// q -> q^n: every half-exponent is multiplied by n (n may be negative).
QPoly substitute_power(const QPoly& p, int n);

// Value at q = v. Odd half-exponents need v to be a rational square.
Rational evaluate(const QPoly& p, const Rational& v);

// Exact quotient num / den; throws InvariantViolation if den does not
// divide num in the Laurent polynomial ring.
QPoly exact_divide(const QPoly& num, const QPoly& den);

// Lagrange interpolation through (x_i, y_i): returns the polynomial in q
// of degree < points.size().
QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

std::string rational_str(const Rational& r);

}  // namespace qgk

#endif  // QGK_QPOLY_HPP
