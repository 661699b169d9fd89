#ifndef QGK_GKM_HPP
#define QGK_GKM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "qgk/qpoly.hpp"
#include "qgk/quiver.hpp"
#include "qgk/roots.hpp"
#include "qgk/series.hpp"

namespace qgk {

// Generator multiplicities P_m = sum_j p_{m,j} q^{j/2} on simple positive
// roots. Values have nonnegative integer coefficients and even
// half-exponents only.
class WeightFunction {
 public:
  explicit WeightFunction(std::size_t rank) : rank_(rank) {}

  std::size_t rank() const { return rank_; }
  // Setting zero removes the entry.
  void set(const DimVector& m, const QPoly& p);
  QPoly at(const DimVector& m) const;
  const std::map<DimVector, QPoly>& values() const { return values_; }
  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  std::size_t rank_;
  std::map<DimVector, QPoly> values_;
};

// (d, half-exponent j) -> dim of the n+ component; nonzero entries only.
struct GkmDimTable {
  std::size_t rank = 0;
  int bound = 0;
  std::map<std::pair<DimVector, int>, long> dims;

  long at(const DimVector& d, int j) const;
  friend bool operator==(const GkmDimTable&, const GkmDimTable&) = default;
};

inline constexpr std::size_t kDefaultGkmCapacity = 20000;

struct GkmOptions {
  // Largest free Lie dimension allowed in one (d, j) block.
  std::size_t capacity = kDefaultGkmCapacity;
  int workers = 1;
  // Nonzero: the alphabet order is shuffled with this seed.
  unsigned alphabet_seed = 0;
  // Only multidegrees d <= window (componentwise) are computed.
  std::optional<DimVector> window;
};

// Positive half n+ of the GKM algebra, built degree by degree inside the
// free associative algebra: each (d, j) block keeps a basis of the Lie
// ideal generated by the Serre and commutation relations.
class GkmEngine {
 public:
  GkmEngine(CartanDatum cartan, int bound, GkmOptions options = {});
  ~GkmEngine();
  GkmEngine(GkmEngine&&) noexcept;
  GkmEngine& operator=(GkmEngine&&) noexcept;

  const CartanDatum& cartan() const;
  int bound() const;

  // p_{m,j} generators at m. Allowed while no block of total degree
  // above |m| has been computed; a block at m itself gains the
  // generators as length-one Lie words.
  void add_generators(const DimVector& m, const QPoly& p);
  // Every block of total degree `total`; all lower totals must be done.
  void compute_level(int total);
  int computed_level() const;
  // j -> dim at d (empty for an uncomputed or zero block).
  std::map<int, long> dims(const DimVector& d) const;
  QPoly character_at(const DimVector& d) const;
  GkmDimTable table() const;
  // Number of letters in the alphabet.
  std::size_t alphabet_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Dimensions of n+ for the weight function up to total degree N. Every key
// of P must lie in Phi+ of `roots`, and real roots carry exactly one
// generator in degree 0.
GkmDimTable gkm_dims(const RootTables& roots, const WeightFunction& p, int bound,
                     const GkmOptions& options = {});

// sum dim q^{j/2} z^d
GradedSeries gkm_character(const GkmDimTable& table);

// Log_{q,z}(1 / (1 - chV)): the character of the free Lie algebra on V.
GradedSeries free_lie_character(const GradedSeries& ch_v);

// Exp_{q,z}(chL): the character of U(n+) by PBW.
GradedSeries uea_character(const GradedSeries& ch_l);

// Solves F(e) = sum_{d <= e} V_d chL_d(e - d) with [z^0] chL_d = 1. The
// characters in `known` are taken as given; every other block is solved
// for, which must leave at most one unknown coefficient per degree.
std::map<DimVector, GradedSeries> lowest_weight_extract(
    const GradedSeries& framed, const std::map<DimVector, QPoly>& multiplicities,
    const std::map<DimVector, GradedSeries>& known = {});

}  // namespace qgk

#endif  // QGK_GKM_HPP
