#include "qgk/roots.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <random>
#include <set>

#include "qgk/errors.hpp"

namespace qgk {

namespace {
constexpr int kNone = INT_MIN / 4;
}

// --------------------------------------------------------------- CartanDatum

CartanDatum::CartanDatum(std::vector<std::vector<int>> matrix) : m_(std::move(matrix)) {
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (m_[i].size() != m_.size()) throw InvalidInput("Cartan matrix is not square");
    if (m_[i][i] % 2 != 0) throw InvalidInput("Cartan matrix has an odd diagonal entry");
    for (std::size_t j = 0; j < i; ++j)
      if (m_[i][j] != m_[j][i]) throw InvalidInput("Cartan matrix is not symmetric");
  }
}

CartanDatum CartanDatum::of(const Quiver& q) {
  const std::size_t n = q.num_vertices();
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = sym_form(q, DimVector::unit(n, i), DimVector::unit(n, j));
  return CartanDatum(std::move(m));
}

int CartanDatum::form(const DimVector& d, const DimVector& e) const {
  if (d.rank() != rank() || e.rank() != rank())
    throw InvalidInput("vector rank does not match the Cartan datum");
  int r = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (d[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) r += d[i] * m_[i][j] * e[j];
  }
  return r;
}

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::kReal: return "real";
    case RootClass::kIsotropic: return "isotropic";
    case RootClass::kHyperbolic: return "hyperbolic";
  }
  return "?";
}

RootClass classify(const CartanDatum& c, const DimVector& d) {
  const int dd = c.form(d, d);
  if (dd == 2) return RootClass::kReal;
  if (dd == 0) return RootClass::kIsotropic;
  if (dd < 0) return RootClass::kHyperbolic;
  throw InvalidInput("vector " + d.str() + " has (d,d) = " + std::to_string(dd) +
                     " and is not a simple root");
}

// --------------------------------------------------------------- SigmaOracle

int SigmaOracle::best_split(const DimVector& d) const {
  int result = kNone;
  for (const auto& a : dimvectors_below(d)) {
    if (a == d) continue;
    const DimVector b = d - a;
    if (b < a) continue;  // each unordered split once
    result = std::max(result, best(a) + best(b));
  }
  return result;
}

int SigmaOracle::best(const DimVector& d) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = best_.find(d);
    if (it != best_.end()) return it->second;
  }
  const int value = std::max(cartan_.p(d), best_split(d));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = best_.emplace(d, value);
  if (!inserted && it->second != value)
    throw InvariantViolation("Sigma memo disagreement", d.str());
  return value;
}

bool SigmaOracle::contains(const DimVector& d) const {
  if (d.rank() != cartan_.rank()) throw InvalidInput("vector rank does not match");
  if (d.is_zero() || !d.is_nonnegative())
    throw InvalidInput("Sigma membership needs a nonzero dimension vector");
  const int p = cartan_.p(d);
  return p >= 0 && p > best_split(d);
}

bool sigma_membership(const CartanDatum& c, const DimVector& d) {
  return SigmaOracle(c).contains(d);
}

// ---------------------------------------------------------------- RootTables

RootTables::RootTables(const CartanDatum& c, int bound)
    : bound_(bound), oracle_(std::make_shared<SigmaOracle>(c)) {
  if (bound < 1) throw InvalidInput("root tables need bound >= 1");
  for (const auto& d : dimvectors_up_to(c.rank(), bound)) {
    if (!oracle_->contains(d)) continue;
    sigma_.push_back(d);
  }
  std::map<DimVector, RootEntry> entries;
  for (const auto& m : sigma_) {
    const RootClass cls = classify(c, m);
    entries.emplace(m, RootEntry{m, cls, c.p(m), true, m, 1});
    if (cls != RootClass::kIsotropic) continue;
    for (int l = 2; l * m.total() <= bound; ++l) {
      const DimVector lm = l * m;
      entries.emplace(lm, RootEntry{lm, cls, c.p(lm), false, m, l});
    }
  }
  for (auto& [d, e] : entries) {
    index_[d] = phi_.size();
    phi_.push_back(std::move(e));
  }
}

bool RootTables::in_sigma(const DimVector& d) const {
  auto e = find(d);
  return e != nullptr && e->in_sigma;
}

bool RootTables::in_phi_plus(const DimVector& d) const { return find(d) != nullptr; }

const RootEntry* RootTables::find(const DimVector& d) const {
  auto it = index_.find(d);
  return it == index_.end() ? nullptr : &phi_[it->second];
}

RootTables phi_plus(const CartanDatum& c, int bound) { return RootTables(c, bound); }

// --------------------------------------------------------------- Weyl group

DimVector weyl_reflect(const Quiver& q, std::size_t i, const DimVector& d) {
  if (i >= q.num_vertices()) throw InvalidInput("vertex index out of range");
  if (q.loops(i) != 0)
    throw InvalidInput("cannot reflect at vertex '" + q.vertices()[i] + "': it carries a loop");
  const DimVector ui = DimVector::unit(q.num_vertices(), i);
  return d - sym_form(q, ui, d) * ui;
}

bool fundamental_cone_membership(const Quiver& q, const DimVector& d) {
  if (d.rank() != q.num_vertices()) throw InvalidInput("vector rank does not match");
  if (d.is_zero()) throw InvalidInput("the fundamental cone test needs d != 0");
  if (!d.is_nonnegative() || !q.connected_support(d)) return false;
  for (std::size_t i = 0; i < q.num_vertices(); ++i) {
    if (q.loops(i) != 0) continue;
    if (sym_form(q, d, DimVector::unit(q.num_vertices(), i)) > 0) return false;
  }
  return true;
}

std::vector<DimVector> positive_roots(const Quiver& q, int bound) {
  if (bound < 1) throw InvalidInput("positive_roots needs bound >= 1");
  const int box = 2 * bound;
  const std::size_t n = q.num_vertices();
  std::set<DimVector> found;
  std::deque<DimVector> queue;
  auto push = [&](const DimVector& d) {
    if (found.insert(d).second) queue.push_back(d);
  };
  for (std::size_t i = 0; i < n; ++i)
    if (q.loops(i) == 0) push(DimVector::unit(n, i));
  for (const auto& d : dimvectors_up_to(n, box))
    if (fundamental_cone_membership(q, d)) push(d);
  while (!queue.empty()) {
    const DimVector d = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      if (q.loops(i) != 0) continue;
      const DimVector r = weyl_reflect(q, i, d);
      if (r.is_zero() || !r.is_nonnegative() || r.total() > box) continue;
      push(r);
    }
  }
  std::vector<DimVector> out;
  for (const auto& d : found)
    if (d.total() <= bound) out.push_back(d);
  return out;
}

bool sigma_prime_membership(const Quiver& q, const DimVector& d,
                            const std::vector<DimVector>& roots) {
  const CartanDatum c = CartanDatum::of(q);
  const std::set<DimVector> rootset(roots.begin(), roots.end());
  if (!rootset.count(d)) return false;
  std::map<DimVector, int> memo;
  // Best sum of p over decompositions of e into members of R+.
  std::function<int(const DimVector&)> best = [&](const DimVector& e) -> int {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    int v = rootset.count(e) ? c.p(e) : kNone;
    for (const auto& a : dimvectors_below(e)) {
      if (a == e) continue;
      const DimVector b = e - a;
      if (b < a) continue;
      const int x = best(a), y = best(b);
      if (x != kNone && y != kNone) v = std::max(v, x + y);
    }
    memo[e] = v;
    return v;
  };
  int split = kNone;
  for (const auto& a : dimvectors_below(d)) {
    if (a == d) continue;
    const DimVector b = d - a;
    if (b < a) continue;
    const int x = best(a), y = best(b);
    if (x != kNone && y != kNone) split = std::max(split, x + y);
  }
  return c.p(d) > split;
}

// ---------------------------------------------------- canonical decomposition

namespace {

Decomposition collect(std::vector<DimVector> parts) {
  std::sort(parts.begin(), parts.end());
  Decomposition out;
  for (const auto& p : parts) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

// First sub-multiset (by size, then index-lexicographic) of `parts` whose
// sum lies in Sigma; empty when there is none.
std::vector<std::size_t> find_merge(const SigmaOracle& sigma,
                                    const std::vector<DimVector>& parts) {
  const std::size_t n = parts.size();
  std::vector<std::size_t> idx;
  std::set<std::vector<DimVector>> tried;
  for (std::size_t k = 2; k <= std::min<std::size_t>(kMaxMergeSize, n); ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<DimVector> chosen;
      DimVector sum(parts[0].rank());
      for (auto i : idx) {
        chosen.push_back(parts[i]);
        sum += parts[i];
      }
      std::sort(chosen.begin(), chosen.end());
      if (tried.insert(chosen).second && sigma.contains(sum)) return idx;
      // next combination
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {};
}

}  // namespace

Decomposition canonical_decomposition(const SigmaOracle& sigma, const DimVector& d,
                                      unsigned scan_seed) {
  if (d.is_zero() || !d.is_nonnegative())
    throw InvalidInput("canonical decomposition needs a nonzero dimension vector");
  std::vector<DimVector> parts;
  for (std::size_t i = 0; i < d.rank(); ++i)
    for (int k = 0; k < d[i]; ++k) parts.push_back(DimVector::unit(d.rank(), i));
  std::mt19937 rng(scan_seed);
  while (true) {
    std::sort(parts.begin(), parts.end());
    if (scan_seed != 0) std::shuffle(parts.begin(), parts.end(), rng);
    const auto merge = find_merge(sigma, parts);
    if (merge.empty()) break;
    DimVector sum(d.rank());
    std::vector<char> drop(parts.size(), 0);
    for (auto i : merge) {
      sum += parts[i];
      drop[i] = 1;
    }
    std::vector<DimVector> next;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (!drop[i]) next.push_back(parts[i]);
    next.push_back(sum);
    parts = std::move(next);
  }
  for (const auto& p : parts)
    if (!sigma.contains(p)) throw InvariantViolation("canonical part not primitive", p.str());
  return collect(std::move(parts));
}

Decomposition canonical_decomposition(const Quiver& q, const DimVector& d,
                                      unsigned scan_seed) {
  SigmaOracle sigma(CartanDatum::of(q));
  return canonical_decomposition(sigma, d, scan_seed);
}

std::vector<std::vector<DimVector>> sigma_decompositions(const SigmaOracle& sigma,
                                                         const DimVector& d) {
  std::vector<DimVector> members;
  for (const auto& e : dimvectors_below(d))
    if (sigma.contains(e)) members.push_back(e);
  std::vector<std::vector<DimVector>> out;
  std::vector<DimVector> cur;
  std::function<void(const DimVector&, std::size_t)> rec = [&](const DimVector& rest,
                                                               std::size_t from) {
    if (rest.is_zero()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < members.size(); ++i) {
      if (!leq(members[i], rest)) continue;
      cur.push_back(members[i]);
      rec(rest - members[i], i);
      cur.pop_back();
    }
  };
  rec(d, 0);
  return out;
}

bool refines(const std::vector<DimVector>& fine, const Decomposition& coarse) {
  std::vector<DimVector> slots;
  for (const auto& [p, m] : coarse)
    for (int k = 0; k < m; ++k) slots.push_back(p);
  if (fine.empty()) return slots.empty();
  std::vector<DimVector> order = fine;
  std::sort(order.rbegin(), order.rend());
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == order.size()) {
      return std::all_of(slots.begin(), slots.end(),
                         [](const DimVector& s) { return s.is_zero(); });
    }
    std::set<DimVector> tried;
    for (auto& s : slots) {
      if (!leq(order[i], s) || !tried.insert(s).second) continue;
      s -= order[i];
      if (place(i + 1)) return true;
      s += order[i];
    }
    return false;
  };
  return place(0);
}

std::string to_string(const Decomposition& dec) {
  std::string out;
  for (const auto& [p, m] : dec) {
    if (!out.empty()) out += " + ";
    out += "(" + p.str() + ")x" + std::to_string(m);
  }
  return out;
}

}  // namespace qgk
