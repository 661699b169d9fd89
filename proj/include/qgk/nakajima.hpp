#ifndef QGK_NAKAJIMA_HPP
#define QGK_NAKAJIMA_HPP

#include <vector>

#include "qgk/cuspidal.hpp"
#include "qgk/gkm.hpp"

namespace qgk {

struct LowestWeightBlock {
  DimVector d;
  // C^abs of the framed quiver at (d, 1), and its IP polynomial in v.
  QPoly cabs;
  QPoly multiplicity;
  // lambda_d(1_i) = (d, 1_i)_Q - f_i.
  std::vector<int> lambda;
  // Character of the lowest-weight module, q^-1 convention, [z^0] = 1.
  GradedSeries chl;
};

struct LowestWeightDecomposition {
  Quiver quiver;
  DimVector framing;
  int bound = 0;
  GradedSeries framed;
  std::vector<LowestWeightBlock> blocks;  // ascending (|d|, lex)
};

// e -> A_{Q_f,(e,1)}(q^-1) for |e| <= N.
GradedSeries framed_character(const Quiver& q, const DimVector& f, int bound);

// Character (positive convention) of the module generated by one
// generator at (d, 1) over the (-, 0) part of the framed GKM algebra.
GradedSeries module_character(const Quiver& q, const DimVector& f, const DimVector& d, int bound,
                              const GkmOptions& options = {});

LowestWeightDecomposition lw_decompose(const Quiver& q, const DimVector& f, int bound,
                                       const GkmOptions& options = {});

// sum over blocks of C^abs(q^-1) chL z^d.
GradedSeries reconstruct(const LowestWeightDecomposition& dec);

int lambda_value(const LowestWeightBlock& block, const DimVector& e);

}  // namespace qgk

#endif  // QGK_NAKAJIMA_HPP
