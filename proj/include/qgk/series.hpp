#ifndef QGK_SERIES_HPP
#define QGK_SERIES_HPP

#include <cstddef>
#include <map>
#include <string>

#include "qgk/qpoly.hpp"
#include "qgk/quiver.hpp"

namespace qgk {

// Adams operation psi_n on a series: Z_ONLY sends z^d to z^(nd) and
// leaves coefficients alone; QZ additionally substitutes q -> q^n.
enum class PlethMode { kZOnly, kQZ };

// Truncated formal series sum_d c_d(q) z^d over the nonnegative
// dimension vectors of a fixed rank, keeping only |d| <= bound.
class GradedSeries {
 public:
  using Terms = std::map<DimVector, QPoly>;

  GradedSeries(std::size_t rank, int bound);
  static GradedSeries one(std::size_t rank, int bound);
  static GradedSeries monomial(const QPoly& c, const DimVector& d, int bound);

  std::size_t rank() const { return rank_; }
  int bound() const { return bound_; }
  const Terms& terms() const { return terms_; }

  QPoly coeff(const DimVector& d) const;
  QPoly constant_term() const;
  // Adds c*z^d; silently dropped when |d| exceeds the bound.
  void add(const DimVector& d, const QPoly& c);
  void set(const DimVector& d, const QPoly& c);
  bool is_zero() const { return terms_.empty(); }

  GradedSeries& operator+=(const GradedSeries& o);
  GradedSeries& operator-=(const GradedSeries& o);
  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
  GradedSeries scaled(const QPoly& c) const;
  friend bool operator==(const GradedSeries&, const GradedSeries&) = default;

  // Same rank and bound, or InvalidInput.
  void check_compatible(const GradedSeries& o) const;
  // Copy with a smaller bound.
  GradedSeries truncated(int bound) const;

  std::string str() const;

 private:
  std::size_t rank_;
  int bound_;
  Terms terms_;
};

GradedSeries series_mul(const GradedSeries& f, const GradedSeries& g);
// Multiplicative inverse; the constant term must be a nonzero constant.
GradedSeries series_inv(const GradedSeries& f);
// Ordinary exp/log (no Adams operations).
GradedSeries series_exp(const GradedSeries& f);
GradedSeries series_log(const GradedSeries& g);

GradedSeries adams(const GradedSeries& f, int n, PlethMode mode);

GradedSeries pleth_exp(const GradedSeries& f, PlethMode mode);
GradedSeries pleth_log(const GradedSeries& g, PlethMode mode);

// Coefficient of u^m in Exp_{q,u}(P u).
QPoly sym_power_coeff(const QPoly& p, int m);

int mobius(int n);

}  // namespace qgk

#endif  // QGK_SERIES_HPP
