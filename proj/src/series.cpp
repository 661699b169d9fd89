#include "qgk/series.hpp"

#include <sstream>
#include <vector>

#include "qgk/errors.hpp"

namespace qgk {

GradedSeries::GradedSeries(std::size_t rank, int bound) : rank_(rank), bound_(bound) {
  if (bound < 0) throw InvalidInput("series bound must be nonnegative");
}

GradedSeries GradedSeries::one(std::size_t rank, int bound) {
  GradedSeries s(rank, bound);
  s.set(DimVector(rank), QPoly(1));
  return s;
}

GradedSeries GradedSeries::monomial(const QPoly& c, const DimVector& d, int bound) {
  GradedSeries s(d.rank(), bound);
  s.add(d, c);
  return s;
}

QPoly GradedSeries::coeff(const DimVector& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? QPoly() : it->second;
}

QPoly GradedSeries::constant_term() const { return coeff(DimVector(rank_)); }

void GradedSeries::add(const DimVector& d, const QPoly& c) {
  if (d.rank() != rank_) throw InvalidInput("series key " + d.str() + " has the wrong rank");
  if (!d.is_nonnegative()) throw InvalidInput("series key " + d.str() + " is negative");
  if (d.total() > bound_ || c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(d, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void GradedSeries::set(const DimVector& d, const QPoly& c) {
  terms_.erase(d);
  add(d, c);
}

void GradedSeries::check_compatible(const GradedSeries& o) const {
  if (o.rank_ != rank_) throw InvalidInput("series over different vertex sets");
  if (o.bound_ != bound_) throw InvalidInput("series with different truncation bounds");
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  check_compatible(o);
  for (const auto& [d, c] : o.terms_) add(d, c);
  return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o) {
  check_compatible(o);
  for (const auto& [d, c] : o.terms_) add(d, -c);
  return *this;
}

GradedSeries GradedSeries::scaled(const QPoly& c) const {
  GradedSeries r(rank_, bound_);
  for (const auto& [d, x] : terms_) r.add(d, x * c);
  return r;
}

GradedSeries GradedSeries::truncated(int bound) const {
  GradedSeries r(rank_, bound);
  for (const auto& [d, x] : terms_) r.add(d, x);
  return r;
}

std::string GradedSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*z^[" << d.str() << "]";
  }
  return os.str();
}

GradedSeries series_mul(const GradedSeries& f, const GradedSeries& g) {
  f.check_compatible(g);
  GradedSeries r(f.rank(), f.bound());
  for (const auto& [a, x] : f.terms())
    for (const auto& [b, y] : g.terms())
      if (a.total() + b.total() <= f.bound()) r.add(a + b, x * y);
  return r;
}

namespace {

bool is_constant(const QPoly& p) {
  return p.is_zero() || (p.terms().size() == 1 && p.terms().begin()->first == 0);
}

}  // namespace

GradedSeries series_inv(const GradedSeries& f) {
  const QPoly c0 = f.constant_term();
  if (c0.is_zero() || !is_constant(c0))
    throw InvalidInput("series_inv: constant term " + c0.str() + " is not a unit");
  const Rational inv0 = Rational(1) / c0.coeff(0);
  GradedSeries g(f.rank(), f.bound());
  g.set(DimVector(f.rank()), QPoly(inv0));
  for (const auto& d : dimvectors_up_to(f.rank(), f.bound())) {
    QPoly acc;
    for (const auto& [e, x] : f.terms()) {
      if (e.is_zero() || !leq(e, d)) continue;
      auto it = g.terms().find(d - e);
      if (it != g.terms().end()) acc += x * it->second;
    }
    g.set(d, acc * (-inv0));
  }
  return g;
}

GradedSeries series_exp(const GradedSeries& f) {
  if (!f.constant_term().is_zero())
    throw InvalidInput("series_exp: constant term must vanish");
  GradedSeries g = GradedSeries::one(f.rank(), f.bound());
  for (const auto& d : dimvectors_up_to(f.rank(), f.bound())) {
    QPoly acc;
    for (const auto& [e, x] : f.terms()) {
      if (!leq(e, d)) continue;
      auto it = g.terms().find(d - e);
      if (it != g.terms().end()) acc += x * it->second * Rational(e.total());
    }
    g.set(d, acc * Rational(1, d.total()));
  }
  return g;
}

GradedSeries series_log(const GradedSeries& g) {
  if (g.constant_term() != QPoly(1))
    throw InvalidInput("series_log: constant term must be 1");
  GradedSeries l(g.rank(), g.bound());
  for (const auto& d : dimvectors_up_to(g.rank(), g.bound())) {
    QPoly acc;
    for (const auto& [e, x] : l.terms()) {
      if (e == d || !leq(e, d)) continue;
      auto it = g.terms().find(d - e);
      if (it != g.terms().end()) acc += x * it->second * Rational(e.total());
    }
    l.set(d, g.coeff(d) - acc * Rational(1, d.total()));
  }
  return l;
}

GradedSeries adams(const GradedSeries& f, int n, PlethMode mode) {
  if (n < 1) throw InvalidInput("Adams operations need n >= 1");
  GradedSeries r(f.rank(), f.bound());
  for (const auto& [d, c] : f.terms()) {
    if (n * d.total() > f.bound()) continue;
    r.add(n * d, mode == PlethMode::kQZ ? substitute_power(c, n) : c);
  }
  return r;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

GradedSeries pleth_exp(const GradedSeries& f, PlethMode mode) {
  if (!f.constant_term().is_zero())
    throw InvalidInput("pleth_exp: constant term must vanish");
  GradedSeries sum(f.rank(), f.bound());
  for (int n = 1; n <= f.bound(); ++n)
    sum += adams(f, n, mode).scaled(QPoly(Rational(1, n)));
  return series_exp(sum);
}

GradedSeries pleth_log(const GradedSeries& g, PlethMode mode) {
  const GradedSeries l = series_log(g);
  GradedSeries r(g.rank(), g.bound());
  for (int n = 1; n <= g.bound(); ++n) {
    const int mu = mobius(n);
    if (mu == 0) continue;
    r += adams(l, n, mode).scaled(QPoly(Rational(mu, n)));
  }
  return r;
}

QPoly sym_power_coeff(const QPoly& p, int m) {
  if (m < 0) throw InvalidInput("sym_power_coeff needs m >= 0");
  if (m == 0) return QPoly(1);
  auto f = GradedSeries::monomial(p, DimVector{1}, m);
  return pleth_exp(f, PlethMode::kQZ).coeff(DimVector{m});
}

}  // namespace qgk
