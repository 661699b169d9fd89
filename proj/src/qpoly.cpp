#include "qgk/qpoly.hpp"

#include <vector>

#include "qgk/errors.hpp"

namespace qgk {

QPoly::QPoly(long c) {
  if (c != 0) terms_.emplace(0, Rational(c));
}

QPoly::QPoly(const Rational& c) {
  if (c != 0) terms_.emplace(0, c);
}

QPoly QPoly::monomial(const Rational& c, int half_exp) {
  QPoly p;
  p.add_term(half_exp, c);
  return p;
}

Rational QPoly::coeff(int half_exp) const {
  auto it = terms_.find(half_exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

void QPoly::add_term(int half_exp, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(half_exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool QPoly::has_integer_coeffs() const {
  for (const auto& [k, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

bool QPoly::has_nonnegative_coeffs() const {
  for (const auto& [k, c] : terms_)
    if (c < 0) return false;
  return true;
}

bool QPoly::only_even_half_exps() const {
  for (const auto& [k, c] : terms_)
    if (k % 2 != 0) return false;
  return true;
}

bool QPoly::is_polynomial_in_q() const {
  return only_even_half_exps() && (is_zero() || min_half_exp() >= 0);
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

QPoly& QPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, x] : terms_) x *= c;
  return *this;
}

namespace {

// p = (1/den) * sum ints[k - lo] q^(k/2), with integer entries.
struct DenseInt {
  int lo = 0;
  std::vector<Integer> ints;
  Integer den = 1;
};

DenseInt to_dense(const QPoly::Terms& t) {
  DenseInt d;
  d.lo = t.begin()->first;
  d.ints.resize(static_cast<std::size_t>(t.rbegin()->first - d.lo + 1));
  for (const auto& [k, c] : t) mpz_lcm(d.den.get_mpz_t(), d.den.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [k, c] : t) {
    Integer& x = d.ints[static_cast<std::size_t>(k - d.lo)];
    x = d.den / c.get_den();
    x *= c.get_num();
  }
  return d;
}

QPoly from_dense(const std::vector<Integer>& ints, int lo, const Integer& den) {
  QPoly r;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    if (ints[i] == 0) continue;
    Rational c(ints[i], den);
    c.canonicalize();
    r.add_term(lo + static_cast<int>(i), c);
  }
  return r;
}

}  // namespace

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    QPoly r;
    for (const auto& [i, x] : a.terms_)
      for (const auto& [j, y] : b.terms_) r.terms_.emplace_hint(r.terms_.end(), i + j, x * y);
    return r;
  }
  const DenseInt da = to_dense(a.terms_), db = to_dense(b.terms_);
  std::vector<Integer> acc(da.ints.size() + db.ints.size() - 1);
  for (std::size_t i = 0; i < da.ints.size(); ++i) {
    if (da.ints[i] == 0) continue;
    for (std::size_t j = 0; j < db.ints.size(); ++j)
      if (db.ints[j] != 0)
        mpz_addmul(acc[i + j].get_mpz_t(), da.ints[i].get_mpz_t(), db.ints[j].get_mpz_t());
  }
  return from_dense(acc, da.lo + db.lo, da.den * db.den);
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& [k, x] : r.terms_) x = -x;
  return r;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

std::string QPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string var;
    if (k != 0) {
      if (k % 2 == 0) {
        var = k == 2 ? "q" : "q^" + std::to_string(k / 2);
      } else {
        var = "q^(" + std::to_string(k) + "/2)";
      }
    }
    if (var.empty()) {
      out += rational_str(mag);
    } else if (mag == 1) {
      out += var;
    } else {
      out += rational_str(mag) + "*" + var;
    }
  }
  return out;
}

nlohmann::json QPoly::to_json() const {
  auto j = nlohmann::json::object();
  for (const auto& [k, c] : terms_) j[std::to_string(k)] = rational_str(c);
  return j;
}

QPoly QPoly::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("polynomial JSON must be an object");
  QPoly p;
  for (const auto& [key, val] : j.items()) {
    if (!val.is_string()) throw InvalidInput("polynomial coefficients must be strings");
    int k;
    Rational c;
    try {
      std::size_t used = 0;
      k = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
      c = Rational(val.get<std::string>());
      c.canonicalize();
    } catch (const std::exception&) {
      throw InvalidInput("malformed polynomial term '" + key + "': " + val.dump());
    }
    p.add_term(k, c);
  }
  return p;
}

QPoly substitute_power(const QPoly& p, int n) {
  QPoly r;
  for (const auto& [k, c] : p.terms()) r.add_term(k * n, c);
  return r;
}

namespace {

bool exact_sqrt(const Rational& v, Rational& root) {
  if (v < 0) return false;
  Integer num = v.get_num(), den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return false;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rational(rn, rd);
  return true;
}

Rational power(const Rational& x, int e) {
  Rational r = 1;
  Rational base = e >= 0 ? x : Rational(1) / x;
  for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
  return r;
}

}  // namespace

Rational evaluate(const QPoly& p, const Rational& v) {
  if (v == 0) throw InvalidInput("cannot evaluate a Laurent polynomial at 0");
  Rational root;
  const bool odd = !p.only_even_half_exps();
  if (odd && !exact_sqrt(v, root))
    throw InvalidInput("odd half-exponent at a non-square value " + rational_str(v));
  Rational sum = 0;
  for (const auto& [k, c] : p.terms()) {
    sum += c * (k % 2 == 0 ? power(v, k / 2) : power(root, k));
  }
  return sum;
}

QPoly exact_divide(const QPoly& num, const QPoly& den) {
  if (den.is_zero()) throw InvariantViolation("division by the zero polynomial");
  if (num.is_zero()) return {};
  auto inexact = [&] {
    return InvariantViolation("inexact polynomial division: " + num.str() + " / " + den.str());
  };
  // num = N / nd and den = D / dd with integer arrays; divide N by D over
  // the rationals, working in integers while the leading coefficient of D
  // divides every step.
  const DenseInt n = to_dense(num.terms()), d = to_dense(den.terms());
  const int qlo = n.lo - d.lo;
  if (n.ints.size() < d.ints.size()) throw inexact();
  const std::size_t qsize = n.ints.size() - d.ints.size() + 1;
  const Integer& lead = d.ints.back();
  std::vector<Rational> quot(qsize);
  std::vector<Rational> rem(n.ints.begin(), n.ints.end());
  const bool unit_lead = lead == 1 || lead == -1;
  if (unit_lead) {
    std::vector<Integer> irem = n.ints;
    for (std::size_t k = qsize; k-- > 0;) {
      Integer c = irem[k + d.ints.size() - 1];
      if (c == 0) continue;
      if (lead == -1) c = -c;
      for (std::size_t j = 0; j < d.ints.size(); ++j)
        if (d.ints[j] != 0) mpz_submul(irem[k + j].get_mpz_t(), c.get_mpz_t(), d.ints[j].get_mpz_t());
      quot[k] = c;
    }
    for (std::size_t i = 0; i + 1 < d.ints.size() && i < irem.size(); ++i)
      if (irem[i] != 0) throw inexact();
  } else {
    for (std::size_t k = qsize; k-- > 0;) {
      const Rational& top = rem[k + d.ints.size() - 1];
      if (top == 0) continue;
      const Rational c = top / lead;
      for (std::size_t j = 0; j < d.ints.size(); ++j)
        if (d.ints[j] != 0) rem[k + j] -= c * d.ints[j];
      quot[k] = c;
    }
    for (std::size_t i = 0; i + 1 < d.ints.size() && i < rem.size(); ++i)
      if (rem[i] != 0) throw inexact();
  }
  // quotient = (N / D) * (dd / nd)
  Rational scale(d.den, n.den);
  scale.canonicalize();
  QPoly r;
  for (std::size_t k = 0; k < qsize; ++k)
    if (quot[k] != 0) r.add_term(qlo + static_cast<int>(k), quot[k] * scale);
  return r;
}

QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw InvalidInput("interpolation needs matching, nonempty samples");
  // Newton divided differences, then expand into the monomial basis.
  const std::size_t n = xs.size();
  std::vector<Rational> coef(ys);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      if (xs[i] == xs[i - j]) throw InvalidInput("repeated interpolation node");
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly result;
  for (std::size_t i = n; i-- > 0;) {
    // result = result * (q - x_i) + coef_i
    result = result * (QPoly::q_pow(1) - QPoly(xs[i])) + QPoly(coef[i]);
  }
  return result;
}

}  // namespace qgk
