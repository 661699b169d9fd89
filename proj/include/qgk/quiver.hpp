#ifndef QGK_QUIVER_HPP
#define QGK_QUIVER_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qgk {

// Integer vector indexed by the vertices of a quiver (in input order).
// Dimension vectors are the nonnegative ones; Weyl reflections may
// produce negative entries, so the type itself is lattice-valued.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::size_t rank) : v_(rank, 0) {}
  DimVector(std::initializer_list<int> xs) : v_(xs) {}
  explicit DimVector(std::vector<int> xs) : v_(std::move(xs)) {}

  static DimVector unit(std::size_t rank, std::size_t i);

  std::size_t rank() const { return v_.size(); }
  int operator[](std::size_t i) const { return v_[i]; }
  int& operator[](std::size_t i) { return v_[i]; }
  const std::vector<int>& entries() const { return v_; }

  // |d| = sum of entries.
  int total() const;
  bool is_zero() const;
  bool is_nonnegative() const;
  std::vector<std::size_t> support() const;
  // gcd of the entries (0 for the zero vector).
  int content() const;

  DimVector& operator+=(const DimVector& o);
  DimVector& operator-=(const DimVector& o);
  friend DimVector operator+(DimVector a, const DimVector& b) { return a += b; }
  friend DimVector operator-(DimVector a, const DimVector& b) { return a -= b; }
  friend DimVector operator*(int k, DimVector a);
  DimVector operator-() const;

  friend bool operator==(const DimVector&, const DimVector&) = default;
  // Total order used for every sorted output: by |d|, then lexicographic.
  friend std::strong_ordering operator<=>(const DimVector& a,
                                          const DimVector& b);

  // Comma-separated entries, e.g. "1,0,2".
  std::string str() const;
  static DimVector parse(const std::string& text, std::size_t rank);

 private:
  std::vector<int> v_;
};

// Componentwise a <= b.
bool leq(const DimVector& a, const DimVector& b);

// Every nonnegative vector of the given rank with 0 < |d| <= bound
// (or 0 <= |d| when include_zero), sorted by (|d|, lex).
std::vector<DimVector> dimvectors_up_to(std::size_t rank, int bound,
                                        bool include_zero = false);

// Every nonzero e with e <= d componentwise, sorted.
std::vector<DimVector> dimvectors_below(const DimVector& d,
                                        bool include_zero = false);

class Quiver {
 public:
  using Arrow = std::pair<std::size_t, std::size_t>;

  Quiver() = default;
  Quiver(std::vector<std::string> vertices,
         std::vector<std::pair<std::string, std::string>> arrows);
  // Convenience constructor on vertex indices.
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t index_of(const std::string& id) const;

  // g_i, the number of loops at vertex i.
  int loops(std::size_t i) const;
  // q_ij, the number of arrows i -> j (loops when i == j).
  int arrow_count(std::size_t i, std::size_t j) const;

  // Support of d is connected in the underlying undirected graph.
  bool connected_support(const DimVector& d) const;

  // Canonical text form (vertices and sorted arrows), used for hashing.
  std::string canonical() const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  void check(const DimVector& d) const;
  friend int euler_form(const Quiver&, const DimVector&, const DimVector&);

  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> counts_;
};

// chi_Q(d, e) = sum_i d_i e_i - sum_a d_s(a) e_t(a).
int euler_form(const Quiver& q, const DimVector& d, const DimVector& e);
// (d, e)_Q = chi_Q(d, e) + chi_Q(e, d).
int sym_form(const Quiver& q, const DimVector& d, const DimVector& e);

Quiver double_quiver(const Quiver& q);
Quiver triple_quiver(const Quiver& q);

// Q with a new last vertex "inf" and f_i arrows inf -> i.
Quiver frame(const Quiver& q, const DimVector& f);
// (d, m) as a dimension vector of the framed quiver.
DimVector framed_vector(const DimVector& d, int m);
// Drop the framing coordinate.
DimVector unframed_part(const DimVector& d);

// Reverse the arrow with the given index.
Quiver reverse_arrow(const Quiver& q, std::size_t arrow);

// JSON quiver files: {"vertices": [...], "arrows": [[s, t], ...]}.
Quiver parse_quiver_json(const std::string& text);
Quiver load_quiver(const std::string& path);
std::string quiver_to_json(const Quiver& q);

// Reference quivers used throughout the tests and the CLI.
namespace quivers {
Quiver jordan();
Quiver loops(int g);
Quiver a1();
Quiver a2();
Quiver kronecker();
}  // namespace quivers

}  // namespace qgk

#endif  // QGK_QUIVER_HPP
