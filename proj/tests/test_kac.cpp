#include <doctest.h>

#include <random>

#include "qgk/errors.hpp"
#include "qgk/kac.hpp"
#include "qgk/roots.hpp"

using namespace qgk;

namespace {

const QPoly q = QPoly::q_pow(1);

// Kac polynomials from the oracle on the convention-selection set.
struct SelectionCase {
  Quiver quiver;
  DimVector d;
};

std::vector<SelectionCase> selection_cases() {
  return {{quivers::jordan(), DimVector{1}},  {quivers::jordan(), DimVector{2}},
          {quivers::jordan(), DimVector{3}},  {quivers::a1(), DimVector{1}},
          {quivers::a2(), DimVector{1, 0}},   {quivers::kronecker(), DimVector{1, 1}}};
}

bool convention_matches_oracle(HuaConvention convention) {
  for (const auto& c : selection_cases()) {
    const auto kac = kac_from_hua(hua_sum(c.quiver, c.d.total()), convention);
    if (!kac) return false;
    auto it = kac->find(c.d);
    const QPoly value = it == kac->end() ? QPoly() : it->second;
    if (value != oracle_kac(c.quiver, c.d, Flavour::kPlain, {2, 3, 4, 5})) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("partitions") {
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(0).size() == 1);
  CHECK(conjugate({3, 1}) == Partition{2, 1, 1});
  CHECK(partition_pairing({2, 1}, {2}) == 3);
  std::mt19937 rng(9);
  const auto ps = partitions(6);
  std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& l = ps[pick(rng)];
    const auto& m = ps[pick(rng)];
    CHECK(partition_pairing(l, m) == partition_pairing(m, l));
    CHECK(conjugate(conjugate(l)) == l);
  }
}

TEST_CASE("brute-force counts") {
  CHECK(brute_force_counts(quivers::jordan(), DimVector{2}, 2, Flavour::kPlain) == 6);
  for (int field : {2, 3, 4, 5, 7})
    CHECK(brute_force_counts(quivers::a1(), DimVector{1}, field, Flavour::kPlain) == 1);
  CHECK(brute_force_counts(quivers::a2(), DimVector{0, 1}, 3, Flavour::kPlain) == 1);
  CHECK(brute_force_counts(quivers::jordan(), DimVector{1}, 3, Flavour::kNilpotent) == 1);
  CHECK(brute_force_counts(quivers::jordan(), DimVector{3}, 3, Flavour::kNilpotent) == 3);
  CHECK_THROWS_AS(brute_force_counts(quivers::jordan(), DimVector{5}, 2, Flavour::kPlain),
                  CapacityExceeded);
  CHECK_THROWS_AS(brute_force_counts(quivers::jordan(), DimVector{1}, 6, Flavour::kPlain),
                  InvalidInput);
}

TEST_CASE("flavoured counts are ordered") {
  const Quiver mixed({"0", "1"}, std::vector<Quiver::Arrow>{{0, 0}, {0, 1}, {1, 0}});
  struct Case {
    Quiver q;
    DimVector d;
  };
  const std::vector<Case> cases{{quivers::jordan(), DimVector{2}}, {quivers::jordan(), DimVector{3}},
                                {quivers::loops(2), DimVector{2}}, {mixed, DimVector{1, 1}},
                                {mixed, DimVector{2, 1}},          {quivers::kronecker(), DimVector{1, 2}}};
  for (const auto& c : cases)
    for (int field : {2, 3}) {
      const Integer nil = brute_force_counts(c.q, c.d, field, Flavour::kNilpotent);
      const Integer one = brute_force_counts(c.q, c.d, field, Flavour::kOneNilpotent);
      const Integer plain = brute_force_counts(c.q, c.d, field, Flavour::kPlain);
      CHECK_MESSAGE(nil <= one, c.d.str());
      CHECK_MESSAGE(one <= plain, c.d.str());
    }
  // Acyclic quivers: every representation is nilpotent.
  CHECK(brute_force_counts(quivers::kronecker(), DimVector{2, 1}, 3, Flavour::kNilpotent) ==
        brute_force_counts(quivers::kronecker(), DimVector{2, 1}, 3, Flavour::kPlain));
}

TEST_CASE("Hua convention is pinned by the oracle") {
  const bool log_ok = convention_matches_oracle(HuaConvention::kLogTimesQMinusOne);
  const bool raw_ok = convention_matches_oracle(HuaConvention::kRawIsCount);
  CHECK(log_ok != raw_ok);
  const HuaConvention selected = log_ok ? HuaConvention::kLogTimesQMinusOne : HuaConvention::kRawIsCount;
  CHECK_MESSAGE(selected == kHuaConvention, "selected " << to_string(selected));
}

TEST_CASE("Hua examples") {
  const KacTable j = hua_kac(quivers::jordan(), 4);
  for (int n = 1; n <= 4; ++n) CHECK(j.at(DimVector{n}) == q);
  CHECK(hua_kac(quivers::a1(), 3).at(DimVector{1}) == 1);
  CHECK(hua_kac(quivers::a1(), 3).at(DimVector{2}).is_zero());
  const KacTable k = hua_kac(quivers::kronecker(), 4);
  CHECK(k.at(DimVector{1, 1}) == q + 1);
  CHECK(k.at(DimVector{2, 2}) == q + 1);
  CHECK(k.at(DimVector{1, 2}) == 1);
  CHECK(hua_kac(quivers::loops(2), 2).at(DimVector{1}) == QPoly::q_pow(2));
  CHECK(hua_kac(quivers::loops(2), 2).at(DimVector{2}) == QPoly::q_pow(3) + QPoly::q_pow(5));
  CHECK_THROWS_AS(hua_kac(quivers::jordan(), 0), InvalidInput);
}

TEST_CASE("oracle examples") {
  CHECK(oracle_kac(quivers::jordan(), DimVector{2}, Flavour::kPlain) == q);
  CHECK(oracle_kac(quivers::a2(), DimVector{1, 1}, Flavour::kPlain) == 1);
  CHECK(oracle_kac(quivers::loops(2), DimVector{1}, Flavour::kPlain) == QPoly::q_pow(2));
  CHECK_THROWS_AS(oracle_kac(quivers::loops(2), DimVector{2}, Flavour::kPlain, {2, 3}), InvalidInput);
}

TEST_CASE("Hua and oracle agree where both are defined") {
  struct Case {
    Quiver q;
    int bound;
  };
  // The g=2 loop quiver has degree 19 at d=3, beyond the field list.
  for (const auto& c : {Case{quivers::a2(), 3}, Case{quivers::kronecker(), 3}, Case{quivers::loops(2), 2},
                        Case{quivers::jordan(), 3}}) {
    const KacTable hua = hua_kac(c.q, c.bound);
    const KacTable oracle = oracle_kac_table(c.q, c.bound, Flavour::kPlain);
    CHECK(hua.values == oracle.values);
  }
}

TEST_CASE("Kac table invariants") {
  for (const Quiver& quiver : {quivers::a2(), quivers::kronecker(), quivers::loops(2), quivers::jordan()}) {
    const int bound = 4;
    const KacTable t = hua_kac(quiver, bound);
    const auto roots = positive_roots(quiver, bound);
    for (const auto& d : dimvectors_up_to(quiver.num_vertices(), bound)) {
      const QPoly a = t.at(d);
      const bool is_root = std::find(roots.begin(), roots.end(), d) != roots.end();
      CHECK_MESSAGE(a.is_zero() != is_root, d.str());
      if (a.is_zero()) continue;
      CHECK(a.is_polynomial_in_q());
      CHECK(a.has_integer_coeffs());
      CHECK(a.has_nonnegative_coeffs());
      CHECK(a.max_half_exp() <= 2 * kac_degree_bound(quiver, d));
    }
  }
}

TEST_CASE("Kac polynomials are orientation independent") {
  for (const Quiver& quiver : {quivers::a2(), quivers::kronecker()}) {
    const KacTable t = hua_kac(quiver, 5);
    for (std::size_t a = 0; a < quiver.num_arrows(); ++a)
      CHECK(hua_kac(reverse_arrow(quiver, a), 5).values == t.values);
  }
  const Quiver mixed({"0", "1"}, std::vector<Quiver::Arrow>{{0, 1}, {1, 0}});
  CHECK(hua_kac(mixed, 4).values == hua_kac(quivers::kronecker(), 4).values);
}

TEST_CASE("Kac polynomials are Weyl invariant") {
  for (const Quiver& quiver : {quivers::a2(), quivers::kronecker()}) {
    const int bound = 4;
    std::vector<std::pair<DimVector, DimVector>> pairs;
    int reach = bound;
    for (const auto& d : dimvectors_up_to(2, bound))
      for (int len = 1; len <= 3; ++len)
        for (int start = 0; start < 2; ++start) {
          DimVector w = d;
          for (int k = 0; k < len; ++k) w = weyl_reflect(quiver, static_cast<std::size_t>((start + k) % 2), w);
          if (!w.is_nonnegative() || w.is_zero()) continue;
          pairs.emplace_back(d, w);
          reach = std::max(reach, w.total());
        }
    const KacTable t = hua_kac(quiver, bound);
    // Reflected vectors reach |w.d| = 28 on the Kronecker quiver; query boxes.
    std::vector<DimVector> ws;
    for (const auto& pr : pairs) ws.push_back(pr.second);
    std::sort(ws.rbegin(), ws.rend());
    std::vector<std::map<DimVector, QPoly>> boxes;
    std::vector<DimVector> tops;
    for (const auto& w : ws) {
      if (std::any_of(tops.begin(), tops.end(), [&](const DimVector& b) { return leq(w, b); })) continue;
      tops.push_back(w);
      boxes.push_back(hua_kac_below(quiver, w));
    }
    auto lookup = [&](const DimVector& w) {
      for (std::size_t i = 0; i < tops.size(); ++i)
        if (leq(w, tops[i])) {
          auto it = boxes[i].find(w);
          return it == boxes[i].end() ? QPoly() : it->second;
        }
      FAIL("no box covers " << w.str());
      return QPoly();
    };
    for (const auto& [d, w] : pairs) CHECK_MESSAGE(lookup(w) == t.at(d), d.str() << " -> " << w.str());
    CHECK(pairs.size() > 10);
    CHECK(reach > bound);
  }
}

TEST_CASE("nilpotent oracle on the Jordan quiver") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(oracle_kac(quivers::jordan(), DimVector{n}, Flavour::kNilpotent) == 1);
    CHECK(oracle_kac(quivers::jordan(), DimVector{n}, Flavour::kOneNilpotent) == 1);
  }
}

TEST_CASE("box-restricted Hua agrees with the full table") {
  for (const Quiver& quiver : {quivers::a2(), quivers::kronecker(), quivers::loops(2), quivers::jordan()}) {
    const KacTable t = hua_kac(quiver, 6);
    const DimVector top = quiver.num_vertices() == 1 ? DimVector{6} : DimVector{3, 3};
    const auto box = hua_kac_below(quiver, top);
    for (const auto& e : dimvectors_below(top)) {
      auto it = box.find(e);
      CHECK_MESSAGE((it == box.end() ? QPoly() : it->second) == t.at(e), e.str());
    }
  }
}

TEST_CASE("Kac table series") {
  const KacTable t = hua_kac(quivers::jordan(), 3);
  const GradedSeries s = t.series();
  CHECK(s.bound() == 3);
  CHECK(s.coeff(DimVector{2}) == q);
  CHECK(s.constant_term().is_zero());
}
