#include "qgk/cuspidal.hpp"

#include <algorithm>

#include "qgk/errors.hpp"

namespace qgk {

namespace {

void check_generator_count(const DimVector& d, const QPoly& p, bool positivity) {
  const bool ok = p.has_integer_coeffs() && p.has_nonnegative_coeffs();
  if (!ok)
    throw InvariantViolation(positivity ? "generator polynomial is negative or fractional"
                                        : "generator polynomial cannot be realised by a GKM algebra",
                             d.str());
  if (!p.only_even_half_exps()) throw InvariantViolation("generator polynomial has an odd half-exponent", d.str());
}

// Componentwise min of the window and the bound.
DimVector target_box(std::size_t rank, int bound, const std::optional<DimVector>& window) {
  DimVector box(rank);
  for (std::size_t i = 0; i < rank; ++i) box[i] = window ? std::min((*window)[i], bound) : bound;
  return box;
}

std::map<DimVector, QPoly> kac_targets(const Quiver& q, int bound, Flavour flavour,
                                       const CuspidalOptions& options) {
  const std::size_t rank = q.num_vertices();
  std::map<DimVector, QPoly> out;
  if (flavour == Flavour::kPlain) {
    if (!options.gkm.window) return hua_kac(q, bound).values;
    const DimVector box = target_box(rank, bound, options.gkm.window);
    if (box.is_zero()) return out;
    for (auto& [d, v] : hua_kac_below(q, box))
      if (d.total() <= bound && !v.is_zero()) out.emplace(d, std::move(v));
    return out;
  }
  KacOracle oracle(q, flavour, options.fields);
  for (const auto& d : dimvectors_up_to(rank, bound)) {
    if (options.gkm.window && !leq(d, *options.gkm.window)) continue;
    QPoly v = oracle.kac(d);
    if (!v.is_zero()) out.emplace(d, std::move(v));
  }
  return out;
}

void check_plain_entry(const Quiver& q, const RootTables& roots, const DimVector& d, const QPoly& c) {
  const bool root = roots.in_phi_plus(d);
  if (c.is_zero() != !root) throw InvariantViolation("C^abs is nonzero exactly on Phi+ fails", d.str());
  if (!root) return;
  const int degree = 1 - euler_form(q, d, d);
  if (!c.is_polynomial_in_q() || c.max_half_exp() != 2 * degree)
    throw InvariantViolation("C^abs does not have degree " + std::to_string(degree), d.str());
  if (c.leading_coeff() != 1) throw InvariantViolation("C^abs is not monic", d.str());
  if (!c.has_integer_coeffs() || !c.has_nonnegative_coeffs())
    throw InvariantViolation("C^abs has a negative or fractional coefficient", d.str());
}

}  // namespace

WeightFunction invert_character(const RootTables& roots, const GradedSeries& target, int bound,
                                const InversionOptions& options) {
  const CartanDatum& cartan = roots.cartan();
  const std::size_t rank = cartan.rank();
  if (target.rank() != rank) throw InvalidInput("target rank differs from the Cartan datum");
  if (bound < 1) throw InvalidInput("inversion bound must be at least 1");
  if (target.bound() < bound) throw InvalidInput("target series is truncated below the inversion bound");
  if (roots.bound() < bound) throw InvalidInput("root tables are truncated below the inversion bound");
  if (!target.constant_term().is_zero()) throw InvalidInput("target has a nonzero constant term");

  GkmEngine engine(cartan, bound, options.gkm);
  WeightFunction p(rank);
  for (int level = 1; level <= bound; ++level) {
    engine.compute_level(level);
    for (const auto& d : dimvectors_up_to(rank, level)) {
      if (d.total() != level) continue;
      if (options.gkm.window && !leq(d, *options.gkm.window)) continue;
      const QPoly pd = target.coeff(d) - engine.character_at(d);
      if (pd.is_zero()) continue;
      const RootEntry* entry = roots.find(d);
      if (!entry) throw InvariantViolation("nonzero generator polynomial off Phi+", d.str());
      check_generator_count(d, pd, options.assert_positivity);
      if (entry->cls == RootClass::kReal && pd != QPoly(1))
        throw InvariantViolation("real root does not carry exactly one generator", d.str());
      p.set(d, pd);
      engine.add_generators(d, pd);
    }
  }
  return p;
}

GradedSeries free_lie_inversion(const GradedSeries& target) {
  if (!target.constant_term().is_zero()) throw InvalidInput("target has a nonzero constant term");
  return GradedSeries::one(target.rank(), target.bound()) - series_inv(pleth_exp(target, PlethMode::kQZ));
}

QPoly CuspidalTable::abs_at(const DimVector& d) const {
  auto it = abs.find(d);
  return it == abs.end() ? QPoly() : it->second;
}

QPoly CuspidalTable::cusp_at(const DimVector& d) const {
  auto it = cusp.find(d);
  return it == cusp.end() ? QPoly() : it->second;
}

CuspidalTable absolutely_cuspidal(const Quiver& q, int bound, Flavour flavour, const CuspidalOptions& options) {
  if (bound < 1) throw InvalidInput("bound must be at least 1");
  const std::size_t rank = q.num_vertices();
  const RootTables roots(CartanDatum::of(q), bound);
  GradedSeries target(rank, bound);
  for (const auto& [d, v] : kac_targets(q, bound, flavour, options)) target.set(d, v);

  InversionOptions inv;
  inv.gkm = options.gkm;
  inv.assert_positivity = true;
  const WeightFunction p = invert_character(roots, target, bound, inv);

  CuspidalTable t{q, flavour, bound, p.values(), {}};
  if (flavour == Flavour::kPlain)
    for (const auto& d : dimvectors_up_to(rank, bound)) {
      if (options.gkm.window && !leq(d, *options.gkm.window)) continue;
      check_plain_entry(q, roots, d, t.abs_at(d));
    }
  t.cusp = cuspidal_from_abs(t);
  return t;
}

std::map<DimVector, QPoly> cuspidal_from_abs(const CuspidalTable& table) {
  const CartanDatum cartan = CartanDatum::of(table.quiver);
  std::map<DimVector, QPoly> out;
  std::map<DimVector, std::map<int, QPoly>> lines;
  for (const auto& [d, c] : table.abs) {
    if (c.is_zero()) continue;
    if (cartan.form(d, d) != 0) {
      out.emplace(d, c);
      continue;
    }
    const int l = d.content();
    DimVector m(d.rank());
    for (std::size_t i = 0; i < d.rank(); ++i) m[i] = d[i] / l;
    lines[m][l] = c;
  }
  for (const auto& [m, values] : lines) {
    const int top = table.bound / m.total();
    GradedSeries s(1, top);
    for (const auto& [l, c] : values) s.set(DimVector{l}, c);
    const GradedSeries converted = pleth_log(pleth_exp(s, PlethMode::kQZ), PlethMode::kZOnly);
    for (const auto& [u, c] : converted.terms()) {
      const DimVector d = u[0] * m;
      if (!c.is_polynomial_in_q()) throw InvariantViolation("cuspidal polynomial is not a polynomial", d.str());
      if (!c.is_zero()) out.emplace(d, c);
    }
  }
  return out;
}

namespace {

const QPoly& abs_for(const CuspidalTable& table, const DimVector& d, QPoly& scratch) {
  if (d.total() > table.bound) throw InvalidInput("d=" + d.str() + " lies beyond the table bound");
  scratch = table.abs_at(d);
  return scratch;
}

CuspidalTable table_below(const Quiver& q, const DimVector& d) {
  if (d.rank() != q.num_vertices() || !d.is_nonnegative() || d.is_zero())
    throw InvalidInput("d must be a nonzero nonnegative vector of rank " + std::to_string(q.num_vertices()));
  CuspidalOptions options;
  options.gkm.window = d;
  return absolutely_cuspidal(q, d.total(), Flavour::kPlain, options);
}

}  // namespace

QPoly ip_polynomial(const CuspidalTable& table, const DimVector& d) {
  if (!sigma_membership(CartanDatum::of(table.quiver), d))
    throw InvalidInput("d=" + d.str() + " is not in Sigma; use ip_general");
  QPoly scratch;
  return substitute_power(abs_for(table, d, scratch), -2);
}

QPoly ip_polynomial(const Quiver& q, const DimVector& d) {
  if (!sigma_membership(CartanDatum::of(q), d)) throw InvalidInput("d=" + d.str() + " is not in Sigma; use ip_general");
  return ip_polynomial(table_below(q, d), d);
}

QPoly ip_general(const CuspidalTable& table, const DimVector& d) {
  QPoly out(1);
  for (const auto& [part, m] : canonical_decomposition(table.quiver, d)) {
    QPoly scratch;
    out = out * sym_power_coeff(substitute_power(abs_for(table, part, scratch), -2), m);
  }
  return out;
}

QPoly ip_general(const Quiver& q, const DimVector& d) { return ip_general(table_below(q, d), d); }

}  // namespace qgk
