#include "qgk/finite_field.hpp"

#include <string>

#include "qgk/errors.hpp"

namespace qgk {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p as coefficient vectors, lowest degree first.
using Poly = std::vector<int>;

Poly decode(int x, int p, int k) {
  Poly c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    c[static_cast<std::size_t>(i)] = x % p;
    x /= p;
  }
  return c;
}

int encode(const Poly& c, int p) {
  int x = 0;
  for (std::size_t i = c.size(); i-- > 0;) x = x * p + c[i];
  return x;
}

// Product of a and b reduced modulo the monic polynomial `mod` of degree k.
Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, int p) {
  const std::size_t k = mod.size() - 1;
  Poly r(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = r.size(); d-- > k;) {
    const int c = r[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= k; ++i)
      r[d - k + i] = ((r[d - k + i] - c * mod[i]) % p + p) % p;
  }
  r.resize(k);
  return r;
}

// First monic polynomial of degree k over F_p whose quotient ring is a
// field (every nonzero residue invertible).
Poly irreducible(int p, int k) {
  int count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (int tail = 0; tail < count; ++tail) {
    Poly mod = decode(tail, p, k);
    mod.push_back(1);
    if (mod[0] == 0) continue;
    bool field = true;
    for (int x = 1; x < count && field; ++x) {
      bool has_inverse = false;
      for (int y = 1; y < count; ++y) {
        Poly r = mulmod(decode(x, p, k), decode(y, p, k), mod, p);
        if (encode(r, p) == 1) {
          has_inverse = true;
          break;
        }
      }
      field = has_inverse;
    }
    if (field) return mod;
  }
  throw Error("no irreducible polynomial found");
}

}  // namespace

bool FiniteField::is_prime_power(int q) {
  if (q < 2) return false;
  for (int p = 2; p <= q; ++p) {
    if (!is_prime(p) || q % p != 0) continue;
    int x = q;
    while (x % p == 0) x /= p;
    return x == 1;
  }
  return false;
}

FiniteField::FiniteField(int q) : q_(q) {
  if (!is_prime_power(q) || q > 256)
    throw InvalidInput("field order " + std::to_string(q) + " is not a small prime power");
  p_ = 2;
  while (q % p_ != 0) ++p_;
  k_ = 0;
  for (int x = q; x > 1; x /= p_) ++k_;
  const Poly mod = irreducible(p_, k_);
  const auto n = static_cast<std::size_t>(q);
  add_.resize(n * n);
  mul_.resize(n * n);
  neg_.resize(n);
  inv_.assign(n, 0);
  for (int a = 0; a < q; ++a) {
    const Poly pa = decode(a, p_, k_);
    Poly na(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) na[i] = (p_ - pa[i]) % p_;
    neg_[static_cast<std::size_t>(a)] = static_cast<Elem>(encode(na, p_));
    for (int b = 0; b < q; ++b) {
      const Poly pb = decode(b, p_, k_);
      Poly s(pa.size());
      for (std::size_t i = 0; i < pa.size(); ++i) s[i] = (pa[i] + pb[i]) % p_;
      add_[static_cast<std::size_t>(a * q + b)] = static_cast<Elem>(encode(s, p_));
      const int m = encode(mulmod(pa, pb, mod, p_), p_);
      mul_[static_cast<std::size_t>(a * q + b)] = static_cast<Elem>(m);
      if (m == 1) inv_[static_cast<std::size_t>(a)] = static_cast<Elem>(b);
    }
  }
}

bool FqMatrix::is_zero() const {
  for (auto x : a)
    if (x) return false;
  return true;
}

FqMatrix fq_mul(const FiniteField& F, const FqMatrix& x, const FqMatrix& y) {
  FqMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const auto xik = x.at(i, k);
      if (!xik) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = F.add(r.at(i, j), F.mul(xik, y.at(k, j)));
    }
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const FiniteField& F, FqMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    const auto inv = F.inv(m.at(row, col));
    for (int j = 0; j < m.cols; ++j) m.at(row, j) = F.mul(m.at(row, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || !m.at(i, col)) continue;
      const auto f = m.at(i, col);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int fq_rank(const FiniteField& F, FqMatrix m) {
  return static_cast<int>(rref(F, m).size());
}

std::vector<std::vector<FiniteField::Elem>> fq_kernel(const FiniteField& F, FqMatrix m) {
  const auto pivots = rref(F, m);
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols), 0);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<std::vector<FiniteField::Elem>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<FiniteField::Elem> v(static_cast<std::size_t>(m.cols), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<std::size_t>(pivots[r])] = F.neg(m.at(static_cast<int>(r), free));
    basis.push_back(std::move(v));
  }
  return basis;
}

FqMatrix fq_row_basis(const FiniteField& F, FqMatrix m) {
  const auto pivots = rref(F, m);
  FqMatrix r(static_cast<int>(pivots.size()), m.cols);
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.at(i, j) = m.at(i, j);
  return r;
}

}  // namespace qgk
