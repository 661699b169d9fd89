#include <doctest.h>

#include "qgk/cuspidal.hpp"
#include "qgk/errors.hpp"

using namespace qgk;

namespace {

const QPoly q = QPoly::q_pow(1);

GradedSeries kac_series(const Quiver& quiver, int bound) { return hua_kac(quiver, bound).series(); }

const Quiver& three_vertex() {
  static const Quiver qv({"0", "1", "2"}, std::vector<Quiver::Arrow>{{0, 1}, {1, 2}, {2, 2}});
  return qv;
}

}  // namespace

TEST_CASE("invert_character examples") {
  const RootTables a2(CartanDatum::of(quivers::a2()), 4);
  GradedSeries sl3(2, 4);
  sl3.set(DimVector{1, 0}, 1);
  sl3.set(DimVector{0, 1}, 1);
  sl3.set(DimVector{1, 1}, 1);
  const WeightFunction p = invert_character(a2, sl3, 4);
  CHECK(p.values().size() == 2);
  CHECK(p.at(DimVector{1, 0}) == 1);
  CHECK(p.at(DimVector{0, 1}) == 1);
  CHECK(p.at(DimVector{1, 1}).is_zero());

  const RootTables kr(CartanDatum::of(quivers::kronecker()), 6);
  const WeightFunction pk = invert_character(kr, kac_series(quivers::kronecker(), 6), 6);
  for (int l = 1; l <= 3; ++l) CHECK(pk.at(DimVector{l, l}) == q);
  CHECK(pk.values().size() == 5);

  const RootTables jr(CartanDatum::of(quivers::jordan()), 6);
  GradedSeries jt(1, 6);
  for (int n = 1; n <= 6; ++n) jt.set(DimVector{n}, q);
  const WeightFunction pj = invert_character(jr, jt, 6);
  for (int n = 1; n <= 6; ++n) CHECK(pj.at(DimVector{n}) == q);
}

TEST_CASE("invert_character reports the offending d") {
  const RootTables a2(CartanDatum::of(quivers::a2()), 3);
  GradedSeries bad(2, 3);
  bad.set(DimVector{1, 0}, 1);
  bad.set(DimVector{0, 1}, 1);
  bad.set(DimVector{1, 1}, 2);
  try {
    invert_character(a2, bad, 3);
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(e.where() == "1,1");
  }

  const RootTables g2(CartanDatum::of(quivers::loops(2)), 3);
  GradedSeries negative(1, 3);
  negative.set(DimVector{1}, 2 * q);
  try {
    invert_character(g2, negative, 3);
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(e.where() == "2");
  }

  GradedSeries with_constant = GradedSeries::one(1, 3);
  CHECK_THROWS_AS(invert_character(g2, with_constant, 3), InvalidInput);
  CHECK_THROWS_AS(invert_character(g2, negative, 4), InvalidInput);
}

TEST_CASE("absolutely cuspidal examples") {
  CHECK(absolutely_cuspidal(quivers::loops(2), 3).abs_at(DimVector{1}) == QPoly::q_pow(2));
  const CuspidalTable kr = absolutely_cuspidal(quivers::kronecker(), 6);
  for (int l = 1; l <= 3; ++l) CHECK(kr.abs_at(DimVector{l, l}) == q);
  CHECK(kr.abs_at(DimVector{1, 0}) == 1);
  CHECK(kr.abs_at(DimVector{2, 1}).is_zero());
  const CuspidalTable nil = absolutely_cuspidal(quivers::jordan(), 3, Flavour::kNilpotent);
  for (int n = 1; n <= 3; ++n) CHECK(nil.abs_at(DimVector{n}) == 1);
}

TEST_CASE("one-nilpotent isotropic values on the Kronecker quiver") {
  CuspidalOptions o;
  o.fields = {2, 3, 4};
  const CuspidalTable t = absolutely_cuspidal(quivers::kronecker(), 4, Flavour::kOneNilpotent, o);
  CHECK(t.abs_at(DimVector{1, 1}) == q);
  CHECK(t.abs_at(DimVector{2, 2}) == q);
}

TEST_CASE("plain C^abs: support, degree, monicity, positivity") {
  for (const Quiver& quiver : {quivers::a2(), quivers::kronecker(), quivers::loops(2), quivers::jordan(), three_vertex()}) {
    const int bound = quiver.num_vertices() == 3 ? 3 : 5;
    const CuspidalTable t = absolutely_cuspidal(quiver, bound);
    const RootTables roots(CartanDatum::of(quiver), bound);
    for (const auto& d : dimvectors_up_to(quiver.num_vertices(), bound)) {
      const QPoly c = t.abs_at(d);
      CHECK_MESSAGE(c.is_zero() == !roots.in_phi_plus(d), d.str());
      if (c.is_zero()) continue;
      CHECK(c.max_half_exp() == 2 * (1 - euler_form(quiver, d, d)));
      CHECK(c.leading_coeff() == 1);
      CHECK(c.has_integer_coeffs());
      CHECK(c.has_nonnegative_coeffs());
    }
  }
}

TEST_CASE("round trip through gkm_dims") {
  for (const Quiver& quiver : {quivers::a2(), quivers::kronecker(), quivers::loops(2), quivers::jordan(), three_vertex()}) {
    const int bound = quiver.num_vertices() == 3 ? 3 : 5;
    const GradedSeries target = kac_series(quiver, bound);
    const RootTables roots(CartanDatum::of(quiver), bound);
    const WeightFunction p = invert_character(roots, target, bound);
    CHECK(gkm_character(gkm_dims(roots, p, bound)) == target);
  }
}

TEST_CASE("totally negative one-vertex quivers agree with the free-Lie inversion") {
  for (int g : {2, 3}) {
    const int bound = 5;
    const GradedSeries target = kac_series(quivers::loops(g), bound);
    const WeightFunction p = invert_character(RootTables(CartanDatum::of(quivers::loops(g)), bound), target, bound);
    GradedSeries from_p(1, bound);
    for (const auto& [d, v] : p.values()) from_p.set(d, v);
    CHECK(from_p == free_lie_inversion(target));
  }
}

TEST_CASE("window computes the same entries") {
  const CuspidalTable full = absolutely_cuspidal(quivers::kronecker(), 5);
  CuspidalOptions o;
  o.gkm.window = DimVector{2, 3};
  const CuspidalTable cut = absolutely_cuspidal(quivers::kronecker(), 5, Flavour::kPlain, o);
  for (const auto& d : dimvectors_below(DimVector{2, 3})) CHECK(cut.abs_at(d) == full.abs_at(d));
  for (const auto& [d, v] : cut.abs) CHECK(leq(d, DimVector{2, 3}));
}

TEST_CASE("cuspidal from absolutely cuspidal") {
  const CuspidalTable j = absolutely_cuspidal(quivers::jordan(), 4);
  CHECK(j.cusp_at(DimVector{1}) == q);
  CHECK(j.cusp_at(DimVector{2}) == (QPoly::q_pow(2) + q) * Rational(1, 2));
  // Exp_z(sum C z^n) recovers Exp_{q,z}(sum C^abs z^n).
  GradedSeries c(1, 4), a(1, 4);
  for (int n = 1; n <= 4; ++n) {
    c.set(DimVector{n}, j.cusp_at(DimVector{n}));
    a.set(DimVector{n}, j.abs_at(DimVector{n}));
  }
  CHECK(pleth_exp(c, PlethMode::kZOnly) == pleth_exp(a, PlethMode::kQZ));

  const CuspidalTable g2 = absolutely_cuspidal(quivers::loops(2), 3);
  CHECK(g2.cusp == g2.abs);
  const CuspidalTable a2 = absolutely_cuspidal(quivers::a2(), 3);
  CHECK(a2.cusp == a2.abs);
  CHECK(cuspidal_from_abs(CuspidalTable{quivers::jordan(), Flavour::kPlain, 3, {}, {}}).empty());
}

TEST_CASE("intersection Poincare polynomials") {
  CHECK(ip_polynomial(quivers::jordan(), DimVector{1}) == QPoly::q_pow(-2));
  CHECK(ip_polynomial(quivers::loops(2), DimVector{1}) == QPoly::q_pow(-4));
  CHECK(ip_polynomial(quivers::kronecker(), DimVector{1, 1}) == QPoly::q_pow(-2));
  CHECK(ip_polynomial(quivers::loops(2), DimVector{2}) ==
        substitute_power(QPoly::q_pow(3) + QPoly::q_pow(5), -2));
  CHECK_THROWS_AS(ip_polynomial(quivers::kronecker(), DimVector{2, 2}), InvalidInput);
  CHECK_THROWS_AS(ip_polynomial(quivers::a2(), DimVector{1, 1}), InvalidInput);

  CHECK(ip_general(quivers::jordan(), DimVector{2}) == sym_power_coeff(QPoly::q_pow(-2), 2));
  CHECK(ip_general(quivers::a2(), DimVector{2, 1}) == 1);
  CHECK(ip_general(quivers::kronecker(), DimVector{2, 2}) == sym_power_coeff(QPoly::q_pow(-2), 2));
  const RootTables g2(CartanDatum::of(quivers::loops(2)), 4);
  for (const auto& d : g2.sigma())
    CHECK(ip_general(quivers::loops(2), d) == ip_polynomial(quivers::loops(2), d));
}
