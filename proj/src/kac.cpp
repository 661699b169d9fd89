#include "qgk/kac.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>

#include "qgk/errors.hpp"
#include "qgk/finite_field.hpp"

namespace qgk {

std::string to_string(Flavour f) {
  switch (f) {
    case Flavour::kPlain: return "plain";
    case Flavour::kNilpotent: return "nilpotent";
    case Flavour::kOneNilpotent: return "one_nilpotent";
  }
  return "?";
}

Flavour parse_flavour(const std::string& s) {
  if (s == "plain") return Flavour::kPlain;
  if (s == "nilpotent") return Flavour::kNilpotent;
  if (s == "one_nilpotent" || s == "1-nilpotent") return Flavour::kOneNilpotent;
  throw InvalidInput("unknown flavour '" + s + "'");
}

std::string to_string(HuaConvention c) {
  return c == HuaConvention::kRawIsCount ? "raw-is-count" : "log-times-q-minus-one";
}

QPoly KacTable::at(const DimVector& d) const {
  auto it = values.find(d);
  return it == values.end() ? QPoly() : it->second;
}

GradedSeries KacTable::series() const {
  GradedSeries s(quiver.num_vertices(), bound);
  for (const auto& [d, a] : values) s.add(d, a);
  return s;
}

int kac_degree_bound(const Quiver& q, const DimVector& d) {
  return 1 - euler_form(q, d, d);
}

// --------------------------------------------------------------- partitions

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Partition conjugate(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  for (int i = 1; i <= p.front(); ++i) {
    int k = 0;
    for (int x : p)
      if (x >= i) ++k;
    c.push_back(k);
  }
  return c;
}

int partition_pairing(const Partition& l, const Partition& m) {
  const Partition lc = conjugate(l), mc = conjugate(m);
  int s = 0;
  for (std::size_t i = 0; i < std::min(lc.size(), mc.size()); ++i) s += lc[i] * mc[i];
  return s;
}

// -------------------------------------------------------------- Hua's sum

namespace {

QPoly one_minus_qinv_pow(int j) {
  QPoly p(1);
  p.add_term(-2 * j, -1);
  return p;
}

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

// b_n(q^-1) / (b_k(q^-1) b_{n-k}(q^-1)).
QPoly gaussian_binomial(int n, int k) {
  static std::map<std::pair<int, int>, QPoly> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
  }
  QPoly r = exact_divide(hua_denominator(n), hua_denominator(k) * hua_denominator(n - k));
  std::lock_guard<std::mutex> lock(cache_mutex());
  cache.emplace(std::make_pair(n, k), r);
  return r;
}

// b_n(q^-1) / b_{n/m}(q^-m).
QPoly adams_denominator_ratio(int n, int m) {
  return exact_divide(hua_denominator(n), substitute_power(hua_denominator(n / m), m));
}

}  // namespace

const QPoly& hua_denominator(int n) {
  static std::deque<QPoly> cache{QPoly(1)};
  std::lock_guard<std::mutex> lock(cache_mutex());
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * one_minus_qinv_pow(static_cast<int>(cache.size())));
  return cache[static_cast<std::size_t>(n)];
}

namespace {

HuaSum hua_sum_on(const Quiver& q, int bound, std::vector<DimVector> keys) {
  const std::size_t n = q.num_vertices();
  HuaSum raw{n, bound, std::move(keys), {}};
  int largest = 0;
  for (const auto& d : raw.keys)
    for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, d[i]);
  std::vector<std::vector<Partition>> parts(static_cast<std::size_t>(largest) + 1);
  for (int k = 0; k <= largest; ++k) parts[static_cast<std::size_t>(k)] = partitions(k);

  for (const auto& d : raw.keys) {
    const int total = d.total();
    QPoly numerator;
    std::vector<const Partition*> pi(n);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        int e = 0;
        for (auto [s, t] : q.arrows()) e += partition_pairing(*pi[s], *pi[t]);
        QPoly denom(1);
        for (std::size_t v = 0; v < n; ++v) {
          e -= partition_pairing(*pi[v], *pi[v]);
          std::map<int, int> mult;
          for (int x : *pi[v]) ++mult[x];
          for (auto [part, m] : mult) denom = denom * hua_denominator(m);
        }
        numerator += QPoly::q_pow(e) * exact_divide(hua_denominator(total), denom);
        return;
      }
      for (const auto& p : parts[static_cast<std::size_t>(d[i])]) {
        pi[i] = &p;
        rec(i + 1);
      }
    };
    rec(0);
    if (!numerator.is_zero()) raw.numerators.emplace(d, std::move(numerator));
  }
  return raw;
}

}  // namespace

HuaSum hua_sum(const Quiver& q, int bound) {
  return hua_sum_on(q, bound, dimvectors_up_to(q.num_vertices(), bound));
}

HuaSum hua_sum_below(const Quiver& q, const DimVector& d) {
  if (d.rank() != q.num_vertices() || !d.is_nonnegative() || d.is_zero())
    throw InvalidInput("hua_sum_below needs a nonzero dimension vector of the quiver");
  return hua_sum_on(q, d.total(), dimvectors_below(d));
}

namespace {

void check_kac_value(const DimVector& d, const QPoly& a) {
  if (!a.has_integer_coeffs() || !a.is_polynomial_in_q())
    throw InvariantViolation("Kac polynomial " + a.str() + " is not an integer polynomial",
                             d.str());
  if (!a.has_nonnegative_coeffs())
    throw InvariantViolation("Kac polynomial " + a.str() + " has a negative coefficient",
                             d.str());
}

std::map<DimVector, QPoly> log_times_q_minus_one(const HuaSum& raw) {
  // Ordinary logarithm, numerators over b_{|d|}.
  std::map<DimVector, QPoly> log_num;
  for (const auto& d : raw.keys) {
    QPoly acc;
    for (const auto& [e, le] : log_num) {
      if (e == d || !leq(e, d)) continue;
      auto it = raw.numerators.find(d - e);
      if (it == raw.numerators.end()) continue;
      acc += le * it->second * gaussian_binomial(d.total(), e.total()) * Rational(e.total());
    }
    auto it = raw.numerators.find(d);
    QPoly value = it == raw.numerators.end() ? QPoly() : it->second;
    value -= acc * Rational(1, d.total());
    if (!value.is_zero()) log_num.emplace(d, std::move(value));
  }
  // Moebius inversion of the Adams sum, then clear the denominator.
  std::map<DimVector, QPoly> kac;
  const QPoly q_minus_one = QPoly::q_pow(1) - QPoly(1);
  for (const auto& d : raw.keys) {
    QPoly g;
    const int content = d.content();
    for (int m = 1; m <= content; ++m) {
      if (content % m != 0 || mobius(m) == 0) continue;
      std::vector<int> xs(d.entries());
      for (int& x : xs) x /= m;
      auto it = log_num.find(DimVector(xs));
      if (it == log_num.end()) continue;
      g += substitute_power(it->second, m) * adams_denominator_ratio(d.total(), m) *
           Rational(mobius(m), m);
    }
    if (g.is_zero()) continue;
    QPoly a = exact_divide(q_minus_one * g, hua_denominator(d.total()));
    if (!a.is_zero()) kac.emplace(d, std::move(a));
  }
  return kac;
}

std::map<DimVector, QPoly> raw_is_count(const HuaSum& raw) {
  GradedSeries counts = GradedSeries::one(raw.rank, raw.bound);
  for (const auto& [d, num] : raw.numerators)
    counts.add(d, exact_divide(num, hua_denominator(d.total())));
  const GradedSeries a = pleth_log(counts, PlethMode::kQZ);
  std::map<DimVector, QPoly> out;
  for (const auto& d : raw.keys)
    if (auto c = a.coeff(d); !c.is_zero()) out.emplace(d, std::move(c));
  return out;
}

}  // namespace

std::optional<std::map<DimVector, QPoly>> kac_from_hua(const HuaSum& raw,
                                                       HuaConvention convention) {
  std::map<DimVector, QPoly> kac;
  try {
    kac = convention == HuaConvention::kRawIsCount ? raw_is_count(raw)
                                                   : log_times_q_minus_one(raw);
  } catch (const InvariantViolation&) {
    return std::nullopt;
  }
  for (const auto& [d, a] : kac)
    if (!a.has_integer_coeffs() || !a.is_polynomial_in_q()) return std::nullopt;
  return kac;
}

KacTable hua_kac(const Quiver& q, int bound, HuaConvention convention) {
  if (bound < 1) throw InvalidInput("hua_kac needs bound >= 1");
  const HuaSum raw = hua_sum(q, bound);
  auto kac = kac_from_hua(raw, convention);
  if (!kac)
    throw InvariantViolation("Hua convention " + to_string(convention) +
                             " does not produce integer polynomials");
  for (const auto& [d, a] : *kac) check_kac_value(d, a);
  return KacTable{q, bound, Flavour::kPlain, std::move(*kac)};
}

namespace {

// Hua's sum at q = v for every key, by exact rational evaluation.
std::map<DimVector, Rational> hua_sum_at(const Quiver& q, const std::vector<DimVector>& keys,
                                         const Rational& v) {
  const std::size_t n = q.num_vertices();
  int largest = 0;
  for (const auto& d : keys)
    for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, d[i]);
  std::vector<std::vector<Partition>> parts(static_cast<std::size_t>(largest) + 1);
  for (int k = 0; k <= largest; ++k) parts[static_cast<std::size_t>(k)] = partitions(k);
  // 1 / b_m(1/v)
  std::vector<Rational> inv_b(static_cast<std::size_t>(largest) + 1, Rational(1));
  Rational vinv = 1 / v, x = 1, b = 1;
  for (int m = 1; m <= largest; ++m) {
    x *= vinv;
    b *= 1 - x;
    inv_b[static_cast<std::size_t>(m)] = 1 / b;
  }
  auto power = [&](int e) {
    Rational r;
    const Rational& base = e >= 0 ? v : vinv;
    const auto k = static_cast<unsigned long>(std::abs(e));
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
    return r;
  };

  // Per partition: its conjugate and the product of 1 / b_m over multiplicities.
  struct Info {
    Partition conj;
    Rational weight;
  };
  std::vector<std::vector<Info>> info(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (const auto& p : parts[k]) {
      std::map<int, int> mult;
      for (int y : p) ++mult[y];
      Rational w = 1;
      for (auto [part, m] : mult) w *= inv_b[static_cast<std::size_t>(m)];
      info[k].push_back({conjugate(p), w});
    }
  auto pairing = [](const Partition& a, const Partition& b) {
    int s = 0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) s += a[i] * b[i];
    return s;
  };

  std::map<DimVector, Rational> out;
  std::vector<const Info*> pi(n);
  for (const auto& d : keys) {
    Rational sum = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        int e = 0;
        for (auto [s, t] : q.arrows()) e += pairing(pi[s]->conj, pi[t]->conj);
        Rational term = 1;
        for (std::size_t w = 0; w < n; ++w) {
          e -= pairing(pi[w]->conj, pi[w]->conj);
          term *= pi[w]->weight;
        }
        sum += term * power(e);
        return;
      }
      for (const auto& p : info[static_cast<std::size_t>(d[i])]) {
        pi[i] = &p;
        rec(i + 1);
      }
    };
    rec(0);
    out.emplace(d, sum);
  }
  return out;
}

// Ordinary logarithm of 1 + sum_d r_d z^d on a box of keys.
std::map<DimVector, Rational> scalar_log(const std::vector<DimVector>& keys,
                                         const std::map<DimVector, Rational>& r) {
  std::map<DimVector, Rational> l;
  for (const auto& d : keys) {
    Rational acc = 0;
    for (const auto& [e, le] : l)
      if (e != d && leq(e, d)) acc += Rational(e.total()) * le * r.at(d - e);
    l.emplace(d, r.at(d) - acc / d.total());
  }
  return l;
}

}  // namespace

std::map<DimVector, QPoly> hua_kac_below(const Quiver& q, const DimVector& d) {
  if (d.rank() != q.num_vertices() || !d.is_nonnegative() || d.is_zero())
    throw InvalidInput("hua_kac_below needs a nonzero dimension vector of the quiver");
  if (kHuaConvention != HuaConvention::kLogTimesQMinusOne)
    throw Error("hua_kac_below implements the log-times-(q-1) convention only");
  const auto keys = dimvectors_below(d);
  int degree = 0;
  for (const auto& e : keys) degree = std::max(degree, kac_degree_bound(q, e));
  // Two points beyond the degree bound act as a consistency check.
  const int points = degree + 3;
  std::vector<Rational> xs;
  std::map<DimVector, std::vector<Rational>> ys;
  // Log of the Hua sum at q = v^m, needed on the keys below floor(d / m).
  std::map<std::pair<long, int>, std::map<DimVector, Rational>> logs;
  auto log_at = [&](long v, int m) -> const std::map<DimVector, Rational>& {
    auto it = logs.find({v, m});
    if (it == logs.end()) {
      std::vector<int> box(d.entries());
      for (int& x : box) x /= m;
      const auto sub = dimvectors_below(DimVector(box));
      Rational vm = 1;
      for (int k = 0; k < m; ++k) vm *= v;
      it = logs.emplace(std::make_pair(v, m), scalar_log(sub, hua_sum_at(q, sub, vm))).first;
    }
    return it->second;
  };
  for (long v = 2; v < 2 + points; ++v) {
    xs.emplace_back(v);
    for (const auto& e : keys) {
      Rational g = 0;
      const int c = e.content();
      for (int m = 1; m <= c; ++m) {
        if (c % m != 0 || mobius(m) == 0) continue;
        std::vector<int> xsd(e.entries());
        for (int& x : xsd) x /= m;
        g += Rational(mobius(m), m) * log_at(v, m).at(DimVector(xsd));
      }
      ys[e].push_back((Rational(v) - 1) * g);
    }
  }
  std::map<DimVector, QPoly> out;
  for (const auto& e : keys) {
    const int deg = kac_degree_bound(q, e);
    const auto& y = ys[e];
    QPoly a;
    if (deg >= 0) {
      const std::size_t need = static_cast<std::size_t>(deg) + 1;
      a = interpolate(std::vector<Rational>(xs.begin(), xs.begin() + static_cast<long>(need)),
                      std::vector<Rational>(y.begin(), y.begin() + static_cast<long>(need)));
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (evaluate(a, xs[i]) != y[i])
        throw InvariantViolation("Hua values do not fit a polynomial of degree <= " +
                                 std::to_string(deg), e.str());
    check_kac_value(e, a);
    if (!a.is_zero()) out.emplace(e, std::move(a));
  }
  return out;
}

// ------------------------------------------------------ brute-force counts

namespace {

long gl_order(int n, int q) {
  long qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  long order = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= q;
  }
  return order;
}

std::vector<FqMatrix> general_linear_group(const FiniteField& F, int n) {
  std::vector<FqMatrix> out;
  const int q = F.order();
  const int cells = n * n;
  FqMatrix m(n, n);
  if (n == 0) {
    out.push_back(m);
    return out;
  }
  std::vector<int> digits(static_cast<std::size_t>(cells), 0);
  while (true) {
    for (int i = 0; i < cells; ++i)
      m.a[static_cast<std::size_t>(i)] = static_cast<FiniteField::Elem>(digits[static_cast<std::size_t>(i)]);
    if (fq_rank(F, m) == n) out.push_back(m);
    int pos = 0;
    while (pos < cells && ++digits[static_cast<std::size_t>(pos)] == q) digits[static_cast<std::size_t>(pos++)] = 0;
    if (pos == cells) break;
  }
  return out;
}

// Matrix of X -> gt X - X gs on (dt x ds) matrices, X row-major.
FqMatrix commutation_map(const FiniteField& F, const FqMatrix& gs, const FqMatrix& gt) {
  const int ds = gs.rows, dt = gt.rows, n = ds * dt;
  FqMatrix m(n, n);
  for (int r = 0; r < dt; ++r)
    for (int c = 0; c < ds; ++c) {
      const int row = r * ds + c;  // entry (r, c) of the image
      // (gt X)_{rc} = sum_k gt_{rk} X_{kc}
      for (int k = 0; k < dt; ++k)
        m.at(row, k * ds + c) = F.add(m.at(row, k * ds + c), gt.at(r, k));
      // (X gs)_{rc} = sum_k X_{rk} gs_{kc}
      for (int k = 0; k < ds; ++k)
        m.at(row, r * ds + k) = F.sub(m.at(row, r * ds + k), gs.at(k, c));
    }
  return m;
}

bool matrix_nilpotent(const FiniteField& F, const FqMatrix& x) {
  if (x.rows == 0) return true;
  FqMatrix p = x;
  for (int i = 1; i < x.rows; ++i) p = fq_mul(F, p, x);
  return p.is_zero();
}

}  // namespace

bool representation_in_flavour(const FiniteField& F, const Quiver& q, const DimVector& d,
                               const std::vector<FqMatrix>& arrows, Flavour flavour) {
  switch (flavour) {
    case Flavour::kPlain:
      return true;
    case Flavour::kOneNilpotent:
      for (std::size_t a = 0; a < q.num_arrows(); ++a)
        if (q.arrows()[a].first == q.arrows()[a].second && !matrix_nilpotent(F, arrows[a]))
          return false;
      return true;
    case Flavour::kNilpotent: {
      // W_{k+1} = sum over arrows of x_a(W_k); nilpotent iff it reaches 0.
      const std::size_t n = q.num_vertices();
      std::vector<FqMatrix> span(n);  // rows span W_i
      for (std::size_t i = 0; i < n; ++i) {
        span[i] = FqMatrix(d[i], d[i]);
        for (int k = 0; k < d[i]; ++k) span[i].at(k, k) = 1;
      }
      for (int step = 0; step <= d.total(); ++step) {
        bool empty = true;
        for (const auto& s : span) empty = empty && s.rows == 0;
        if (empty) return true;
        std::vector<std::vector<std::vector<FiniteField::Elem>>> images(n);
        for (std::size_t a = 0; a < q.num_arrows(); ++a) {
          auto [s, t] = q.arrows()[a];
          const FqMatrix& x = arrows[a];
          for (int r = 0; r < span[s].rows; ++r) {
            std::vector<FiniteField::Elem> img(static_cast<std::size_t>(d[t]), 0);
            for (int i = 0; i < d[t]; ++i)
              for (int j = 0; j < d[s]; ++j)
                img[static_cast<std::size_t>(i)] =
                    F.add(img[static_cast<std::size_t>(i)], F.mul(x.at(i, j), span[s].at(r, j)));
            images[t].push_back(std::move(img));
          }
        }
        for (std::size_t i = 0; i < n; ++i) {
          FqMatrix m(static_cast<int>(images[i].size()), d[i]);
          for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < d[i]; ++c)
              m.at(r, c) = images[i][static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          span[i] = fq_row_basis(F, m);
        }
      }
      return false;
    }
  }
  return false;
}

namespace {

// Generators of GL_n(F_q) with their inverses: transvections I + c E_ij for
// c running over an F_p-basis of F_q, and diag(w, 1, ..., 1) for w
// generating the multiplicative group.
std::vector<std::pair<FqMatrix, FqMatrix>> gl_generators(const FiniteField& F, int n) {
  std::vector<std::pair<FqMatrix, FqMatrix>> gens;
  if (n == 0) return gens;
  auto identity = [&] {
    FqMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  };
  const int q = F.order(), p = F.characteristic();
  for (int c = 1; c < q; c *= p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        FqMatrix g = identity(), h = identity();
        g.at(i, j) = static_cast<FiniteField::Elem>(c);
        h.at(i, j) = F.neg(static_cast<FiniteField::Elem>(c));
        gens.emplace_back(g, h);
      }
  for (int w = 2; w < q; ++w) {
    int order = 1;
    for (auto x = static_cast<FiniteField::Elem>(w); x != 1; x = F.mul(x, static_cast<FiniteField::Elem>(w))) ++order;
    if (order != q - 1) continue;
    FqMatrix g = identity(), h = identity();
    g.at(0, 0) = static_cast<FiniteField::Elem>(w);
    h.at(0, 0) = F.inv(static_cast<FiniteField::Elem>(w));
    gens.emplace_back(g, h);
    break;
  }
  return gens;
}

inline constexpr long kMaxFlavouredSpace = 1L << 22;

// Orbits of GL_d on the flavour locus, found as connected components of
// the action of a generating set.
Integer flavoured_orbit_count(const FiniteField& F, const Quiver& q, const DimVector& d,
                              Flavour flavour) {
  const int field = F.order();
  const auto& arrows = q.arrows();
  std::size_t entries = 0;
  for (auto [s, t] : arrows) entries += static_cast<std::size_t>(d[s] * d[t]);
  long space = 1;
  for (std::size_t k = 0; k < entries; ++k) {
    space *= field;
    if (space > kMaxFlavouredSpace)
      throw CapacityExceeded("representation space over F_" + std::to_string(field) +
                             " is too large to enumerate");
  }
  auto decode = [&](long index) {
    std::vector<FqMatrix> x;
    for (auto [s, t] : arrows) x.emplace_back(d[t], d[s]);
    for (std::size_t a = 0; a < arrows.size(); ++a)
      for (auto& e : x[a].a) {
        e = static_cast<FiniteField::Elem>(index % field);
        index /= field;
      }
    return x;
  };
  auto encode = [&](const std::vector<FqMatrix>& x) {
    long index = 0;
    for (std::size_t a = arrows.size(); a-- > 0;)
      for (std::size_t k = x[a].a.size(); k-- > 0;) index = index * field + x[a].a[k];
    return index;
  };

  // 0: outside the locus, 1: unvisited, 2: visited.
  std::vector<std::uint8_t> state(static_cast<std::size_t>(space), 0);
  for (long i = 0; i < space; ++i)
    if (representation_in_flavour(F, q, d, decode(i), flavour)) state[static_cast<std::size_t>(i)] = 1;

  std::vector<std::vector<std::pair<FqMatrix, FqMatrix>>> gens(q.num_vertices());
  for (std::size_t v = 0; v < gens.size(); ++v) gens[v] = gl_generators(F, d[v]);

  Integer orbits = 0;
  std::vector<long> stack;
  for (long start = 0; start < space; ++start) {
    if (state[static_cast<std::size_t>(start)] != 1) continue;
    ++orbits;
    state[static_cast<std::size_t>(start)] = 2;
    stack.push_back(start);
    while (!stack.empty()) {
      const auto x = decode(stack.back());
      stack.pop_back();
      for (std::size_t v = 0; v < gens.size(); ++v)
        for (const auto& [g, ginv] : gens[v]) {
          auto y = x;
          for (std::size_t a = 0; a < arrows.size(); ++a) {
            if (arrows[a].second == v) y[a] = fq_mul(F, g, y[a]);
            if (arrows[a].first == v) y[a] = fq_mul(F, y[a], ginv);
          }
          const long j = encode(y);
          if (state[static_cast<std::size_t>(j)] == 1) {
            state[static_cast<std::size_t>(j)] = 2;
            stack.push_back(j);
          }
        }
    }
  }
  return orbits;
}

}  // namespace

Integer brute_force_counts(const Quiver& q, const DimVector& d, int field, Flavour flavour) {
  if (d.rank() != q.num_vertices() || !d.is_nonnegative())
    throw InvalidInput("dimension vector does not match the quiver");
  if (d.total() > kBruteForceMaxTotal)
    throw CapacityExceeded("brute-force counting is limited to |d| <= " +
                           std::to_string(kBruteForceMaxTotal));
  if (field > kBruteForceMaxField)
    throw CapacityExceeded("brute-force counting is limited to fields of order <= " +
                           std::to_string(kBruteForceMaxField));
  const FiniteField F(field);
  if (flavour != Flavour::kPlain) return flavoured_orbit_count(F, q, d, flavour);
  const std::size_t n = q.num_vertices();
  long group = 1;
  for (std::size_t i = 0; i < n; ++i) {
    long cells = 1;
    for (int k = 0; k < d[i] * d[i]; ++k) cells *= field;
    if (cells > 2 * kBruteForceMaxGroup)
      throw CapacityExceeded("GL_" + std::to_string(d[i]) + "(F_" + std::to_string(field) +
                             ") is too large to enumerate");
    group *= gl_order(d[i], field);
    if (group > kBruteForceMaxGroup)
      throw CapacityExceeded("group GL_d(F_" + std::to_string(field) + ") exceeds the limit");
  }
  std::vector<std::vector<FqMatrix>> gl(n);
  for (std::size_t i = 0; i < n; ++i) gl[i] = general_linear_group(F, d[i]);

  Integer fixed_total = 0;
  std::vector<const FqMatrix*> g(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i < n) {
      for (const auto& m : gl[i]) {
        g[i] = &m;
        rec(i + 1);
      }
      return;
    }
    int dim = 0;
    for (auto [s, t] : q.arrows()) {
      const FqMatrix map = commutation_map(F, *g[s], *g[t]);
      dim += map.cols - fq_rank(F, map);
    }
    Integer c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(field),
                  static_cast<unsigned long>(dim));
    fixed_total += c;
  };
  rec(0);
  Integer order = group;
  if (fixed_total % order != 0)
    throw InvariantViolation("Burnside sum not divisible by the group order", d.str());
  return fixed_total / order;
}

// ----------------------------------------------------------------- oracle

KacOracle::KacOracle(Quiver q, Flavour flavour, std::vector<int> fields)
    : q_(std::move(q)), flavour_(flavour), fields_(std::move(fields)) {
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (!FiniteField::is_prime_power(fields_[i]))
      throw InvalidInput("field order " + std::to_string(fields_[i]) + " is not a prime power");
    for (std::size_t j = 0; j < i; ++j)
      if (fields_[j] == fields_[i]) throw InvalidInput("repeated field order");
  }
}

std::optional<Integer> KacOracle::try_count(const DimVector& d, int field) {
  auto key = std::make_pair(d, field);
  auto it = counts_.find(key);
  if (it != counts_.end()) return it->second;
  std::optional<Integer> c;
  try {
    c = brute_force_counts(q_, d, field, flavour_);
  } catch (const CapacityExceeded&) {
  }
  counts_.emplace(key, c);
  return c;
}

Integer KacOracle::count(const DimVector& d, int field) {
  auto c = try_count(d, field);
  if (!c) return brute_force_counts(q_, d, field, flavour_);  // rethrows the limit
  return *c;
}

QPoly KacOracle::kac(const DimVector& d) {
  if (d.is_zero()) throw InvalidInput("oracle_kac needs d != 0");
  auto it = kac_.find(d);
  if (it != kac_.end()) return it->second;

  // Known part of [z^d] Exp_{q,z}(sum_{e<d} A_e z^e).
  GradedSeries lower(d.rank(), d.total());
  for (const auto& e : dimvectors_below(d))
    if (e != d) lower.add(e, kac(e));
  const QPoly known = pleth_exp(lower, PlethMode::kQZ).coeff(d);

  const int degree = kac_degree_bound(q_, d);
  const std::size_t needed = static_cast<std::size_t>(std::max(degree, 0)) + 1;
  std::vector<Rational> xs, ys;
  for (int v : fields_) {
    if (xs.size() == needed + 1) break;  // one extra point as a check
    auto m = try_count(d, v);
    if (!m) continue;
    xs.emplace_back(v);
    ys.push_back(Rational(*m) - evaluate(known, Rational(v)));
  }
  if (xs.size() < needed)
    throw InvalidInput("oracle_kac: insufficient field orders for degree bound " +
                       std::to_string(degree) + " at d=" + d.str());
  QPoly a;
  if (degree >= 0) {
    std::vector<Rational> fx(xs.begin(), xs.begin() + static_cast<long>(needed));
    std::vector<Rational> fy(ys.begin(), ys.begin() + static_cast<long>(needed));
    a = interpolate(fx, fy);
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (evaluate(a, xs[i]) != ys[i])
      throw InvariantViolation("oracle interpolation inconsistent with the count at q=" +
                                   xs[i].get_str(),
                               d.str());
  if (!a.has_integer_coeffs())
    throw InvariantViolation("oracle produced non-integer polynomial " + a.str(), d.str());
  kac_.emplace(d, a);
  return a;
}

QPoly oracle_kac(const Quiver& q, const DimVector& d, Flavour flavour,
                 const std::vector<int>& fields) {
  return KacOracle(q, flavour, fields).kac(d);
}

KacTable oracle_kac_table(const Quiver& q, int bound, Flavour flavour,
                          const std::vector<int>& fields) {
  KacOracle oracle(q, flavour, fields);
  KacTable t{q, bound, flavour, {}};
  for (const auto& d : dimvectors_up_to(q.num_vertices(), bound)) {
    QPoly a = oracle.kac(d);
    if (!a.is_zero()) t.values.emplace(d, std::move(a));
  }
  return t;
}

}  // namespace qgk
