#ifndef QGK_CUSPIDAL_HPP
#define QGK_CUSPIDAL_HPP

#include <map>
#include <optional>
#include <vector>

#include "qgk/gkm.hpp"
#include "qgk/kac.hpp"
#include "qgk/roots.hpp"

namespace qgk {

struct InversionOptions {
  GkmOptions gkm;
  // Require nonnegative integer generator counts; a violation is reported
  // as an invariant failure rather than an unrealisable weight.
  bool assert_positivity = true;
};

// The unique weight function P whose GKM character equals `target` up to
// total degree N, found degree by degree in (|d|, lex) order.
WeightFunction invert_character(const RootTables& roots, const GradedSeries& target, int bound,
                                const InversionOptions& options = {});

// Independent route for quivers without relations: the generator
// character V with Log(1/(1 - V)) = target, i.e. V = 1 - 1/Exp(target).
GradedSeries free_lie_inversion(const GradedSeries& target);

struct CuspidalTable {
  Quiver quiver;
  Flavour flavour = Flavour::kPlain;
  int bound = 0;
  std::map<DimVector, QPoly> abs;   // nonzero entries only
  std::map<DimVector, QPoly> cusp;  // nonzero entries only

  QPoly abs_at(const DimVector& d) const;
  QPoly cusp_at(const DimVector& d) const;
};

struct CuspidalOptions {
  GkmOptions gkm;
  // Oracle fields for the nilpotent flavours.
  std::vector<int> fields = kDefaultFields;
};

// C^abs from the Kac polynomials of the given flavour (Hua for plain, the
// counting oracle otherwise). With gkm.window set only d <= window are
// computed. Plain tables are checked for support, degree 1 - chi(d, d),
// monicity and positivity.
CuspidalTable absolutely_cuspidal(const Quiver& q, int bound, Flavour flavour = Flavour::kPlain,
                                  const CuspidalOptions& options = {});

// C from C^abs: equal off isotropic lines; along each isotropic line
// Exp_z(sum C z^{lm}) = Exp_{q,z}(sum C^abs z^{lm}).
std::map<DimVector, QPoly> cuspidal_from_abs(const CuspidalTable& table);

// Intersection Poincare polynomial of the singular quiver variety at
// d in Sigma, in the variable v: C^abs_d(v^-2).
QPoly ip_polynomial(const CuspidalTable& table, const DimVector& d);
QPoly ip_polynomial(const Quiver& q, const DimVector& d);

// Product over the canonical decomposition d = sum m_j d_j of the
// symmetric-power coefficients of IP(d_j).
QPoly ip_general(const CuspidalTable& table, const DimVector& d);
QPoly ip_general(const Quiver& q, const DimVector& d);

}  // namespace qgk

#endif  // QGK_CUSPIDAL_HPP
