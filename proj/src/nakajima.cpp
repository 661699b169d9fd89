#include "qgk/nakajima.hpp"

#include "qgk/errors.hpp"

namespace qgk {

namespace {

void check_framing(const Quiver& q, const DimVector& f, int bound) {
  if (f.rank() != q.num_vertices() || !f.is_nonnegative())
    throw InvalidInput("framing must be a nonnegative vector of rank " + std::to_string(q.num_vertices()));
  if (bound < 0) throw InvalidInput("bound must be nonnegative");
}

// (N, ..., N, 1): the framing-weight-one slice of the framed quiver.
DimVector slice_window(std::size_t rank, int bound) {
  DimVector w(rank + 1);
  for (std::size_t i = 0; i < rank; ++i) w[i] = bound;
  w[rank] = 1;
  return w;
}

GradedSeries module_from(const Quiver& qf, const std::map<DimVector, QPoly>& unframed_abs, const DimVector& d,
                         int bound, GkmOptions options) {
  const std::size_t rank = qf.num_vertices() - 1;
  GradedSeries out(rank, bound - d.total());
  out.set(DimVector(rank), 1);
  if (bound == d.total()) return out;
  options.window = slice_window(rank, bound);
  GkmEngine engine(CartanDatum::of(qf), bound + 1, options);
  for (const auto& [m, c] : unframed_abs)
    if (m.total() <= bound) engine.add_generators(framed_vector(m, 0), c);
  engine.add_generators(framed_vector(d, 1), 1);
  for (int level = 1; level <= bound + 1; ++level) engine.compute_level(level);
  for (const auto& e : dimvectors_up_to(rank, bound - d.total())) {
    const QPoly c = engine.character_at(framed_vector(d + e, 1));
    if (!c.is_zero()) out.set(e, c);
  }
  return out;
}

std::map<DimVector, QPoly> unframed_part_of(const CuspidalTable& framed_abs) {
  std::map<DimVector, QPoly> out;
  for (const auto& [d, c] : framed_abs.abs)
    if (d[d.rank() - 1] == 0) out.emplace(unframed_part(d), c);
  return out;
}

CuspidalTable framed_cuspidal(const Quiver& qf, std::size_t rank, int bound, const GkmOptions& options) {
  CuspidalOptions o;
  o.gkm = options;
  o.gkm.window = slice_window(rank, bound);
  return absolutely_cuspidal(qf, bound + 1, Flavour::kPlain, o);
}

}  // namespace

GradedSeries framed_character(const Quiver& q, const DimVector& f, int bound) {
  check_framing(q, f, bound);
  const std::size_t rank = q.num_vertices();
  const Quiver qf = frame(q, f);
  GradedSeries out(rank, bound);
  for (const auto& [e, a] : hua_kac_below(qf, slice_window(rank, bound))) {
    if (e[rank] != 1) continue;
    const DimVector d = unframed_part(e);
    if (d.total() <= bound) out.set(d, substitute_power(a, -1));
  }
  return out;
}

GradedSeries module_character(const Quiver& q, const DimVector& f, const DimVector& d, int bound,
                              const GkmOptions& options) {
  check_framing(q, f, bound);
  if (d.rank() != q.num_vertices() || !d.is_nonnegative() || d.total() > bound)
    throw InvalidInput("block degree must be nonnegative with |d| <= bound");
  const Quiver qf = frame(q, f);
  const std::map<DimVector, QPoly> abs =
      bound == 0 ? std::map<DimVector, QPoly>{} : absolutely_cuspidal(q, bound, Flavour::kPlain, {options}).abs;
  return module_from(qf, abs, d, bound, options);
}

int lambda_value(const LowestWeightBlock& block, const DimVector& e) {
  if (e.rank() != block.lambda.size()) throw InvalidInput("vector rank does not match");
  int out = 0;
  for (std::size_t i = 0; i < e.rank(); ++i) out += block.lambda[i] * e[i];
  return out;
}

LowestWeightDecomposition lw_decompose(const Quiver& q, const DimVector& f, int bound,
                                       const GkmOptions& options) {
  check_framing(q, f, bound);
  const std::size_t rank = q.num_vertices();
  const Quiver qf = frame(q, f);
  LowestWeightDecomposition dec{q, f, bound, framed_character(q, f, bound), {}};

  const CuspidalTable cabs = framed_cuspidal(qf, rank, bound, options);
  const std::map<DimVector, QPoly> unframed = unframed_part_of(cabs);
  const RootTables roots(CartanDatum::of(qf), bound + 1);

  std::map<DimVector, QPoly> multiplicities;
  std::map<DimVector, GradedSeries> known;
  for (const auto& e : dimvectors_up_to(rank, bound, true)) {
    const DimVector de = framed_vector(e, 1);
    const QPoly c = cabs.abs_at(de);
    if (c.is_zero() != !roots.in_phi_plus(de))
      throw InvariantViolation("framed C^abs support differs from Phi+", de.str());
    if (c.is_zero()) continue;
    LowestWeightBlock block{e, c, substitute_power(c, -2), {}, GradedSeries(rank, bound - e.total())};
    for (std::size_t i = 0; i < rank; ++i)
      block.lambda.push_back(sym_form(q, e, DimVector::unit(rank, i)) - f[i]);
    const GradedSeries positive = module_from(qf, unframed, e, bound, options);
    for (const auto& [k, v] : positive.terms()) block.chl.set(k, substitute_power(v, -1));
    multiplicities.emplace(e, substitute_power(c, -1));
    if (!e.is_zero()) known.emplace(e, block.chl);
    dec.blocks.push_back(std::move(block));
  }
  if (dec.blocks.empty() || !dec.blocks.front().d.is_zero())
    throw InvariantViolation("(0,...,0,1) is missing from the framed roots", framed_vector(DimVector(rank), 1).str());

  // The zero block, solved from the framed character, must agree with
  // the constructed module character.
  const auto solved = lowest_weight_extract(dec.framed, multiplicities, known);
  const GradedSeries& zero = solved.at(DimVector(rank));
  if (zero != dec.blocks.front().chl) {
    for (const auto& e : dimvectors_up_to(rank, bound, true))
      if (zero.coeff(e) != dec.blocks.front().chl.coeff(e))
        throw InvariantViolation("lowest-weight reconstruction fails", e.str());
  }
  if (reconstruct(dec) != dec.framed) throw InvariantViolation("lowest-weight reconstruction fails");
  return dec;
}

GradedSeries reconstruct(const LowestWeightDecomposition& dec) {
  GradedSeries out(dec.framing.rank(), dec.bound);
  for (const auto& b : dec.blocks) {
    const QPoly v = substitute_power(b.cabs, -1);
    for (const auto& [e, c] : b.chl.terms()) out.add(b.d + e, v * c);
  }
  return out;
}

}  // namespace qgk
