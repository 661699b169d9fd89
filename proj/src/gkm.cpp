#include "qgk/gkm.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <thread>

#include "qgk/errors.hpp"

namespace qgk {

void WeightFunction::set(const DimVector& m, const QPoly& p) {
  if (m.rank() != rank_) throw InvalidInput("weight function key has the wrong rank: " + m.str());
  if (!m.is_nonnegative() || m.is_zero())
    throw InvalidInput("weight function key must be a nonzero nonnegative vector: " + m.str());
  if (!p.has_integer_coeffs() || !p.has_nonnegative_coeffs())
    throw InvalidInput("weight function value at " + m.str() + " must have nonnegative integer coefficients");
  if (!p.only_even_half_exps())
    throw InvalidInput("weight function value at " + m.str() + " has an odd half-exponent");
  if (p.is_zero())
    values_.erase(m);
  else
    values_[m] = p;
}

QPoly WeightFunction::at(const DimVector& m) const {
  auto it = values_.find(m);
  return it == values_.end() ? QPoly() : it->second;
}

long GkmDimTable::at(const DimVector& d, int j) const {
  auto it = dims.find({d, j});
  return it == dims.end() ? 0 : it->second;
}

namespace {

using Word = std::vector<std::uint16_t>;
using SparseVec = std::map<Word, Rational>;

struct Letter {
  DimVector deg;
  int j;
  int l;
  bool real;
};

bool canonical_less(const Letter& a, const Letter& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  if (a.j != b.j) return a.j < b.j;
  return a.l < b.l;
}

// Duval: w is Lyndon iff its first Lyndon factor is all of w.
bool is_lyndon(const Word& w) {
  const std::size_t n = w.size();
  std::size_t i = 0, k = 1;
  while (k < n && w[i] <= w[k]) {
    if (w[i] < w[k])
      i = 0;
    else
      ++i;
    ++k;
  }
  return k == n && i == 0;
}

void axpy(SparseVec& v, const Rational& c, const SparseVec& x) {
  for (const auto& [w, a] : x) {
    auto [it, inserted] = v.try_emplace(w, 0);
    it->second -= c * a;
    if (it->second == 0) v.erase(it);
  }
}

SparseVec bracket_letter(std::uint16_t g, const SparseVec& x) {
  SparseVec out;
  for (const auto& [w, c] : x) {
    Word left;
    left.reserve(w.size() + 1);
    left.push_back(g);
    left.insert(left.end(), w.begin(), w.end());
    Word right = w;
    right.push_back(g);
    auto add = [&](Word&& key, const Rational& v) {
      auto [it, inserted] = out.try_emplace(std::move(key), 0);
      it->second += v;
      if (it->second == 0) out.erase(it);
    };
    add(std::move(left), c);
    add(std::move(right), -c);
  }
  return out;
}

// Semi-echelon basis: every vector's smallest word is its pivot, with
// coefficient 1, and pivots are distinct.
class Echelon {
 public:
  bool insert(SparseVec v) {
    while (!v.empty()) {
      auto it = pivots_.find(v.begin()->first);
      if (it == pivots_.end()) break;
      const Rational c = v.begin()->second;
      axpy(v, c, basis_[it->second]);
    }
    if (v.empty()) return false;
    const Rational lead = v.begin()->second;
    if (lead != 1)
      for (auto& [w, c] : v) c /= lead;
    pivots_.emplace(v.begin()->first, basis_.size());
    basis_.push_back(std::move(v));
    return true;
  }
  std::vector<SparseVec> take() { return std::move(basis_); }

 private:
  std::vector<SparseVec> basis_;
  std::map<Word, std::size_t> pivots_;
};

struct Block {
  std::map<int, long> dims;
  std::map<int, std::vector<SparseVec>> ideal;
};

}  // namespace

struct GkmEngine::Impl {
  CartanDatum cartan;
  int bound;
  GkmOptions options;
  std::vector<Letter> letters;
  bool frozen = false;
  int level = 0;
  std::map<DimVector, Block> blocks;
  // Derived at freeze time and on every append.
  std::map<DimVector, std::vector<std::uint16_t>> by_degree;

  Impl(CartanDatum c, int b, GkmOptions o) : cartan(std::move(c)), bound(b), options(std::move(o)) {}

  void reindex() {
    by_degree.clear();
    for (std::size_t i = 0; i < letters.size(); ++i)
      by_degree[letters[i].deg].push_back(static_cast<std::uint16_t>(i));
  }

  void freeze() {
    if (frozen) return;
    frozen = true;
    if (options.alphabet_seed != 0) {
      std::mt19937 rng(options.alphabet_seed);
      std::shuffle(letters.begin(), letters.end(), rng);
    }
    reindex();
  }

  bool in_window(const DimVector& d) const { return !options.window || leq(d, *options.window); }

  // Relations of multidegree d, keyed by half-exponent.
  std::map<int, std::vector<SparseVec>> relations(const DimVector& d) const {
    std::map<int, std::vector<SparseVec>> out;
    for (const auto& [m, xs] : by_degree) {
      if (!leq(m, d) || m == d) continue;
      const DimVector n = d - m;
      auto it = by_degree.find(n);
      if (it != by_degree.end() && cartan.form(m, n) == 0) {
        for (auto x : xs)
          for (auto y : it->second) {
            if (x >= y) continue;
            SparseVec v;
            v[Word{x, y}] = 1;
            v[Word{y, x}] = -1;
            out[letters[x].j + letters[y].j].push_back(std::move(v));
          }
      }
      if (!letters[xs.front()].real) continue;
      // ad(e_m)^k (y) with k = 1 - (m, n) >= 2 and d = k m + n.
      const std::uint16_t e = xs.front();
      for (int k = 2; ; ++k) {
        const DimVector rest = d - k * m;
        if (!rest.is_nonnegative() || rest.is_zero()) break;
        auto jt = by_degree.find(rest);
        if (jt == by_degree.end() || rest == m) continue;
        if (1 - cartan.form(m, rest) != k) continue;
        for (auto y : jt->second) {
          SparseVec v;
          v[Word{y}] = 1;
          for (int r = 0; r < k; ++r) v = bracket_letter(e, v);
          out[letters[y].j].push_back(std::move(v));
        }
      }
    }
    return out;
  }

  // Lyndon words of multidegree d, counted by half-exponent.
  std::map<int, long> lyndon_counts(const DimVector& d) const {
    std::map<int, long> counts;
    std::vector<std::pair<DimVector, const std::vector<std::uint16_t>*>> degs;
    for (const auto& [m, xs] : by_degree)
      if (leq(m, d)) degs.emplace_back(m, &xs);
    const std::size_t word_cap = 64 * options.capacity;
    std::size_t words = 0;
    Word w;
    auto rec = [&](auto&& self, const DimVector& rest, int j) -> void {
      if (rest.is_zero()) {
        if (++words > word_cap)
          throw CapacityExceeded("GKM block at d=" + d.str() + " exceeds the word capacity");
        if (is_lyndon(w)) {
          auto& c = counts[j];
          if (static_cast<std::size_t>(++c) > options.capacity)
            throw CapacityExceeded("GKM block at d=" + d.str() + " exceeds capacity " +
                                   std::to_string(options.capacity));
        }
        return;
      }
      for (const auto& [m, xs] : degs) {
        if (!leq(m, rest)) continue;
        const DimVector next = rest - m;
        for (auto x : *xs) {
          w.push_back(x);
          self(self, next, j + letters[x].j);
          w.pop_back();
        }
      }
    };
    rec(rec, d, 0);
    return counts;
  }

  Block compute_block(const DimVector& d) const {
    Block block;
    const std::map<int, long> free = lyndon_counts(d);
    std::map<int, std::vector<SparseVec>> span = relations(d);
    for (const auto& [m, xs] : by_degree) {
      if (!leq(m, d) || m == d) continue;
      auto it = blocks.find(d - m);
      if (it == blocks.end()) continue;
      for (auto g : xs)
        for (const auto& [j, basis] : it->second.ideal)
          for (const auto& v : basis) span[j + letters[g].j].push_back(bracket_letter(g, v));
    }
    std::map<int, long> rank;
    for (auto& [j, vs] : span) {
      Echelon ech;
      for (auto& v : vs) ech.insert(std::move(v));
      auto basis = ech.take();
      if (basis.empty()) continue;
      rank[j] = static_cast<long>(basis.size());
      block.ideal[j] = std::move(basis);
    }
    for (const auto& [j, n] : free) {
      const long r = rank.count(j) ? rank.at(j) : 0;
      if (n - r < 0) throw InvariantViolation("ideal larger than the free Lie algebra", d.str());
      if (n - r > 0) block.dims[j] = n - r;
    }
    for (const auto& [j, r] : rank)
      if (!free.count(j)) throw InvariantViolation("ideal outside the free Lie algebra", d.str());
    return block;
  }
};

GkmEngine::GkmEngine(CartanDatum cartan, int bound, GkmOptions options) {
  if (bound < 1) throw InvalidInput("GKM bound must be at least 1");
  if (options.workers < 1) throw InvalidInput("workers must be at least 1");
  if (options.window && options.window->rank() != cartan.rank())
    throw InvalidInput("GKM window has the wrong rank");
  impl_ = std::make_unique<Impl>(std::move(cartan), bound, std::move(options));
}

GkmEngine::~GkmEngine() = default;
GkmEngine::GkmEngine(GkmEngine&&) noexcept = default;
GkmEngine& GkmEngine::operator=(GkmEngine&&) noexcept = default;

const CartanDatum& GkmEngine::cartan() const { return impl_->cartan; }
int GkmEngine::bound() const { return impl_->bound; }
int GkmEngine::computed_level() const { return impl_->level; }
std::size_t GkmEngine::alphabet_size() const { return impl_->letters.size(); }

void GkmEngine::add_generators(const DimVector& m, const QPoly& p) {
  Impl& s = *impl_;
  WeightFunction check(s.cartan.rank());
  check.set(m, p);
  if (p.is_zero() || m.total() > s.bound || !s.in_window(m)) return;
  if (m.total() < s.level) throw InvalidInput("generators added below a computed level at " + m.str());
  const bool real = s.cartan.form(m, m) == 2;
  if (real && p != QPoly(1)) throw InvalidInput("a real root carries exactly one generator: " + m.str());
  for (const auto& l : s.letters)
    if (l.deg == m) throw InvalidInput("generators at " + m.str() + " were already added");
  std::size_t count = s.letters.size();
  for (const auto& [j, c] : p.terms()) count += c.get_num().get_ui();
  if (count > 65535) throw CapacityExceeded("GKM alphabet exceeds 65535 letters");
  for (const auto& [j, c] : p.terms())
    for (unsigned long l = 0; l < c.get_num().get_ui(); ++l) {
      Letter letter{m, j, static_cast<int>(l), real};
      if (s.frozen)
        s.letters.push_back(letter);
      else
        s.letters.insert(std::upper_bound(s.letters.begin(), s.letters.end(), letter, canonical_less), letter);
    }
  if (s.frozen) s.reindex();
  if (m.total() == s.level) {
    auto& dims = s.blocks[m].dims;
    for (const auto& [j, c] : p.terms()) dims[j] += c.get_num().get_si();
  }
}

void GkmEngine::compute_level(int total) {
  Impl& s = *impl_;
  if (total != s.level + 1) throw InvalidInput("GKM levels must be computed in order");
  if (total > s.bound) throw InvalidInput("GKM level beyond the bound");
  s.freeze();
  std::vector<DimVector> ds;
  for (const auto& d : dimvectors_up_to(s.cartan.rank(), total))
    if (d.total() == total && s.in_window(d)) ds.push_back(d);
  std::vector<Block> results(ds.size());
  std::vector<std::exception_ptr> errors(ds.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ds.size(); i = next++) {
      try {
        results[i] = s.compute_block(ds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(s.options.workers), ds.size());
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (!results[i].dims.empty() || !results[i].ideal.empty()) s.blocks[ds[i]] = std::move(results[i]);
  s.level = total;
}

std::map<int, long> GkmEngine::dims(const DimVector& d) const {
  auto it = impl_->blocks.find(d);
  return it == impl_->blocks.end() ? std::map<int, long>{} : it->second.dims;
}

QPoly GkmEngine::character_at(const DimVector& d) const {
  QPoly out;
  for (const auto& [j, n] : dims(d)) out.add_term(j, n);
  return out;
}

GkmDimTable GkmEngine::table() const {
  GkmDimTable t;
  t.rank = impl_->cartan.rank();
  t.bound = impl_->level;
  for (const auto& [d, b] : impl_->blocks)
    for (const auto& [j, n] : b.dims) t.dims[{d, j}] = n;
  return t;
}

GkmDimTable gkm_dims(const RootTables& roots, const WeightFunction& p, int bound,
                     const GkmOptions& options) {
  if (p.rank() != roots.cartan().rank()) throw InvalidInput("weight function rank differs from the Cartan datum");
  if (bound > roots.bound()) throw InvalidInput("GKM bound exceeds the root table bound");
  GkmEngine engine(roots.cartan(), bound, options);
  for (const auto& [m, v] : p.values()) {
    if (m.total() > bound) continue;
    if (!roots.in_phi_plus(m)) throw InvalidInput("weight function key is not a simple root: " + m.str());
    engine.add_generators(m, v);
  }
  for (int level = 1; level <= bound; ++level) engine.compute_level(level);
  GkmDimTable t = engine.table();
  t.bound = bound;
  return t;
}

GradedSeries gkm_character(const GkmDimTable& table) {
  GradedSeries out(table.rank, table.bound);
  for (const auto& [key, n] : table.dims) out.add(key.first, QPoly::monomial(n, key.second));
  return out;
}

GradedSeries free_lie_character(const GradedSeries& ch_v) {
  if (!ch_v.constant_term().is_zero()) throw InvalidInput("generator character has a constant term");
  return pleth_log(series_inv(GradedSeries::one(ch_v.rank(), ch_v.bound()) - ch_v), PlethMode::kQZ);
}

GradedSeries uea_character(const GradedSeries& ch_l) { return pleth_exp(ch_l, PlethMode::kQZ); }

std::map<DimVector, GradedSeries> lowest_weight_extract(
    const GradedSeries& framed, const std::map<DimVector, QPoly>& multiplicities,
    const std::map<DimVector, GradedSeries>& known) {
  const std::size_t rank = framed.rank();
  const int bound = framed.bound();
  std::map<DimVector, GradedSeries> out;
  for (const auto& [d, v] : multiplicities) {
    if (d.rank() != rank || !d.is_nonnegative()) throw InvalidInput("bad block degree " + d.str());
    if (v.is_zero()) throw InvalidInput("zero multiplicity at block " + d.str());
    if (d.total() > bound) continue;
    GradedSeries s(rank, bound - d.total());
    if (auto it = known.find(d); it != known.end()) {
      if (it->second.constant_term() != 1) throw InvalidInput("known character is not normalised at " + d.str());
      for (const auto& [e, c] : it->second.terms()) s.add(e, c);
    } else {
      s.set(DimVector(rank), 1);
    }
    out.emplace(d, std::move(s));
  }
  for (const auto& e : dimvectors_up_to(rank, bound, true)) {
    QPoly rest;
    std::vector<DimVector> unknown;
    for (const auto& [d, chl] : out) {
      if (!leq(d, e)) continue;
      const DimVector off = e - d;
      if (!off.is_zero() && !known.count(d))
        unknown.push_back(d);
      else
        rest += multiplicities.at(d) * chl.coeff(off);
    }
    const QPoly lhs = framed.coeff(e);
    if (unknown.size() > 1)
      throw InvalidInput("lowest-weight system is underdetermined at e=" + e.str());
    if (unknown.empty()) {
      if (lhs != rest) throw InvariantViolation("lowest-weight decomposition is inconsistent", e.str());
      continue;
    }
    const DimVector& d = unknown.front();
    out.at(d).set(e - d, exact_divide(lhs - rest, multiplicities.at(d)));
  }
  return out;
}

}  // namespace qgk
