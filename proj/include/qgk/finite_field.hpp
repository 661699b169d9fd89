#ifndef QGK_FINITE_FIELD_HPP
#define QGK_FINITE_FIELD_HPP

#include <cstdint>
#include <vector>

namespace qgk {

// GF(q) for a small prime power q, with elements encoded as 0..q-1
// (base-p digits of a polynomial over F_p) and table arithmetic.
class FiniteField {
 public:
  using Elem = std::uint8_t;

  explicit FiniteField(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const { return inv_[a]; }

  static bool is_prime_power(int q);

 private:
  int q_, p_, k_;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

// Dense matrices over GF(q) stored row-major.
struct FqMatrix {
  int rows = 0, cols = 0;
  std::vector<FiniteField::Elem> a;

  FqMatrix() = default;
  FqMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), 0) {}
  FiniteField::Elem& at(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  FiniteField::Elem at(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
  bool is_zero() const;
};

FqMatrix fq_mul(const FiniteField& F, const FqMatrix& x, const FqMatrix& y);

// Row-reduces in place and returns the rank.
int fq_rank(const FiniteField& F, FqMatrix m);

// Basis of the null space {v : m v = 0}, one vector per entry.
std::vector<std::vector<FiniteField::Elem>> fq_kernel(const FiniteField& F, FqMatrix m);

// Row basis of the span of the given rows (reduced echelon form).
FqMatrix fq_row_basis(const FiniteField& F, FqMatrix m);

}  // namespace qgk

#endif  // QGK_FINITE_FIELD_HPP
