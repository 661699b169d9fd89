#ifndef QGK_ROOTS_HPP
#define QGK_ROOTS_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgk/quiver.hpp"

namespace qgk {

// Symmetric integer bilinear form on Z^rank with even diagonal.
class CartanDatum {
 public:
  explicit CartanDatum(std::vector<std::vector<int>> matrix);
  static CartanDatum of(const Quiver& q);

  std::size_t rank() const { return m_.size(); }
  int entry(std::size_t i, std::size_t j) const { return m_[i][j]; }
  int form(const DimVector& d, const DimVector& e) const;
  // p(d) = 2 - (d, d).
  int p(const DimVector& d) const { return 2 - form(d, d); }
  bool real_capable(std::size_t i) const { return m_[i][i] == 2; }
  const std::vector<std::vector<int>>& matrix() const { return m_; }

 private:
  std::vector<std::vector<int>> m_;
};

enum class RootClass { kReal, kIsotropic, kHyperbolic };
std::string to_string(RootClass c);
RootClass classify(const CartanDatum& c, const DimVector& d);

// Memoised primitive-positive-root test. Safe for concurrent use: the
// memo is a write-once cache guarded by a mutex.
class SigmaOracle {
 public:
  explicit SigmaOracle(CartanDatum c) : cartan_(std::move(c)) {}
  const CartanDatum& cartan() const { return cartan_; }

  bool contains(const DimVector& d) const;
  // max over decompositions of d into nonzero parts of sum p(part).
  int best(const DimVector& d) const;
  // max over nontrivial decompositions (at least two parts).
  int best_split(const DimVector& d) const;

 private:
  CartanDatum cartan_;
  mutable std::mutex mu_;
  mutable std::map<DimVector, int> best_;
};

bool sigma_membership(const CartanDatum& c, const DimVector& d);

struct RootEntry {
  DimVector d;
  RootClass cls;
  int p;  // 2 - (d, d)
  bool in_sigma;
  // For isotropic entries d = multiplier * primitive; otherwise d, 1.
  DimVector primitive;
  int multiplier;
};

class RootTables {
 public:
  RootTables(const CartanDatum& c, int bound);

  int bound() const { return bound_; }
  const CartanDatum& cartan() const { return oracle_->cartan(); }
  const std::vector<RootEntry>& phi_plus() const { return phi_; }
  const std::vector<DimVector>& sigma() const { return sigma_; }
  bool in_sigma(const DimVector& d) const;
  bool in_phi_plus(const DimVector& d) const;
  const RootEntry* find(const DimVector& d) const;
  const SigmaOracle& oracle() const { return *oracle_; }

 private:
  int bound_;
  std::shared_ptr<SigmaOracle> oracle_;
  std::vector<DimVector> sigma_;
  std::vector<RootEntry> phi_;
  std::map<DimVector, std::size_t> index_;
};

RootTables phi_plus(const CartanDatum& c, int bound);

// s_i(d) = d - (1_i, d) 1_i for a loop-free vertex i.
DimVector weyl_reflect(const Quiver& q, std::size_t i, const DimVector& d);

bool fundamental_cone_membership(const Quiver& q, const DimVector& d);

// Positive roots R+ with |d| <= bound, by Weyl closure of real simple
// roots and fundamental-cone elements; sorted by (|d|, lex).
std::vector<DimVector> positive_roots(const Quiver& q, int bound);

// Sigma' test: d in R+ and p(d) strictly exceeds every decomposition of d
// into at least two members of R+.
bool sigma_prime_membership(const Quiver& q, const DimVector& d,
                            const std::vector<DimVector>& roots);

using Decomposition = std::vector<std::pair<DimVector, int>>;

// Canonical decomposition by iterated merging of sub-multisets (up to
// kMaxMergeSize parts) whose sum is primitive. `scan_seed` permutes the
// merge scan order (0 keeps the canonical order); used by tests.
inline constexpr int kMaxMergeSize = 4;
Decomposition canonical_decomposition(const Quiver& q, const DimVector& d,
                                      unsigned scan_seed = 0);
Decomposition canonical_decomposition(const SigmaOracle& sigma, const DimVector& d,
                                      unsigned scan_seed = 0);

// Every multiset of Sigma members summing to d (brute force).
std::vector<std::vector<DimVector>> sigma_decompositions(const SigmaOracle& sigma,
                                                         const DimVector& d);

// True when the parts of `fine` can be grouped so that the group sums
// are exactly the parts of `coarse`.
bool refines(const std::vector<DimVector>& fine, const Decomposition& coarse);

std::string to_string(const Decomposition& dec);

}  // namespace qgk

#endif  // QGK_ROOTS_HPP
