#ifndef QGK_KAC_HPP
#define QGK_KAC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgk/finite_field.hpp"
#include "qgk/qpoly.hpp"
#include "qgk/quiver.hpp"
#include "qgk/series.hpp"

namespace qgk {

enum class Flavour { kPlain, kNilpotent, kOneNilpotent };
std::string to_string(Flavour f);
Flavour parse_flavour(const std::string& s);

struct KacTable {
  Quiver quiver;
  int bound = 0;
  Flavour flavour = Flavour::kPlain;
  std::map<DimVector, QPoly> values;  // nonzero entries only

  QPoly at(const DimVector& d) const;
  // sum_d A_d(q) z^d.
  GradedSeries series() const;
};

// 1 - chi_Q(d, d): the degree bound of A_{Q,d}.
int kac_degree_bound(const Quiver& q, const DimVector& d);

using Partition = std::vector<int>;  // weakly decreasing, positive parts
std::vector<Partition> partitions(int n);
Partition conjugate(const Partition& p);
// <l, m> = sum_i l'_i m'_i.
int partition_pairing(const Partition& l, const Partition& m);

// Where the (q - 1) factor sits between the raw Hua sum and Kac
// polynomials. kRawIsCount reads the raw sum as sum_d M_d z^d;
// kLogTimesQMinusOne takes A = (q - 1) * Log_{q,z}(raw sum).
enum class HuaConvention { kRawIsCount, kLogTimesQMinusOne };
std::string to_string(HuaConvention c);

// Selected by validating both conventions against brute-force counts
// (see tests/test_kac.cpp); frozen here.
inline constexpr HuaConvention kHuaConvention = HuaConvention::kLogTimesQMinusOne;

// The raw Hua sum with coefficient at z^d stored as a numerator over
// b_{|d|}(q^-1) = prod_{j<=|d|} (1 - q^-j).
struct HuaSum {
  std::size_t rank = 0;
  int bound = 0;
  std::vector<DimVector> keys;  // sorted, closed under e <= d
  std::map<DimVector, QPoly> numerators;
};

HuaSum hua_sum(const Quiver& q, int bound);
// Only the coefficients at nonzero e <= d.
HuaSum hua_sum_below(const Quiver& q, const DimVector& d);
// b_n(q^-1).
const QPoly& hua_denominator(int n);

// Kac polynomials from a raw sum under the given convention, or nullopt
// when the convention produces something that is not a polynomial.
std::optional<std::map<DimVector, QPoly>> kac_from_hua(const HuaSum& raw,
                                                       HuaConvention convention);

// Kac polynomials by Hua's formula; asserts integrality and positivity.
KacTable hua_kac(const Quiver& q, int bound, HuaConvention convention = kHuaConvention);
// A_{Q,e} for every nonzero e <= d, without the rest of the |e| <= |d| table.
// Evaluates the Hua pipeline exactly at q = 2, 3, ... and interpolates up to
// the degree bound 1 - chi(e, e), with two extra points as a check.
std::map<DimVector, QPoly> hua_kac_below(const Quiver& q, const DimVector& d);

// Size limits of the brute-force counter.
inline constexpr int kBruteForceMaxTotal = 4;
inline constexpr int kBruteForceMaxField = 16;
inline constexpr long kBruteForceMaxGroup = 2'000'000;

// Number of GL_d(F_q)-orbits of (flavour-restricted) representations.
Integer brute_force_counts(const Quiver& q, const DimVector& d, int field, Flavour flavour);

// Does the representation given by one matrix per arrow (row-major,
// target-by-source) satisfy the flavour's nilpotency condition?
bool representation_in_flavour(const FiniteField& F, const Quiver& q, const DimVector& d,
                               const std::vector<FqMatrix>& arrows, Flavour flavour);

inline const std::vector<int> kDefaultFields = {2, 3, 4, 5, 7, 8, 9};

// Kac polynomials recovered from brute-force counts by inverting the
// plethystic relation and interpolating over the given field orders.
class KacOracle {
 public:
  KacOracle(Quiver q, Flavour flavour, std::vector<int> fields = kDefaultFields);

  QPoly kac(const DimVector& d);
  // Count M_d(v), memoised.
  Integer count(const DimVector& d, int field);
  const std::vector<int>& fields() const { return fields_; }

 private:
  Quiver q_;
  Flavour flavour_;
  std::vector<int> fields_;
  std::map<DimVector, QPoly> kac_;
  std::map<std::pair<DimVector, int>, std::optional<Integer>> counts_;
  std::optional<Integer> try_count(const DimVector& d, int field);
};

QPoly oracle_kac(const Quiver& q, const DimVector& d, Flavour flavour,
                 const std::vector<int>& fields = kDefaultFields);

// Every d with |d| <= bound through the oracle.
KacTable oracle_kac_table(const Quiver& q, int bound, Flavour flavour,
                          const std::vector<int>& fields = kDefaultFields);

}  // namespace qgk

#endif  // QGK_KAC_HPP
