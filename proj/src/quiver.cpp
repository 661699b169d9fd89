#include "qgk/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qgk/errors.hpp"

namespace qgk {

// ---------------------------------------------------------------- DimVector

DimVector DimVector::unit(std::size_t rank, std::size_t i) {
  DimVector d(rank);
  d.v_.at(i) = 1;
  return d;
}

int DimVector::total() const { return std::accumulate(v_.begin(), v_.end(), 0); }

bool DimVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](int x) { return x == 0; });
}

bool DimVector::is_nonnegative() const {
  return std::all_of(v_.begin(), v_.end(), [](int x) { return x >= 0; });
}

std::vector<std::size_t> DimVector::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] != 0) s.push_back(i);
  return s;
}

int DimVector::content() const {
  int g = 0;
  for (int x : v_) g = std::gcd(g, x);
  return g;
}

DimVector& DimVector::operator+=(const DimVector& o) {
  if (o.rank() != rank()) throw InvalidInput("dimension vectors of different rank");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

DimVector& DimVector::operator-=(const DimVector& o) {
  if (o.rank() != rank()) throw InvalidInput("dimension vectors of different rank");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

DimVector operator*(int k, DimVector a) {
  for (int& x : a.v_) x *= k;
  return a;
}

DimVector DimVector::operator-() const { return -1 * *this; }

std::strong_ordering operator<=>(const DimVector& a, const DimVector& b) {
  if (auto c = a.total() <=> b.total(); c != 0) return c;
  return a.v_ <=> b.v_;
}

std::string DimVector::str() const {
  std::string out;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v_[i]);
  }
  return out;
}

DimVector DimVector::parse(const std::string& text, std::size_t rank) {
  std::vector<int> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int x = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      xs.push_back(x);
    } catch (const std::exception&) {
      throw InvalidInput("malformed dimension vector '" + text + "'");
    }
  }
  if (xs.size() != rank)
    throw InvalidInput("dimension vector '" + text + "' has " +
                       std::to_string(xs.size()) + " entries, expected " +
                       std::to_string(rank));
  return DimVector(std::move(xs));
}

bool leq(const DimVector& a, const DimVector& b) {
  if (a.rank() != b.rank()) throw InvalidInput("dimension vectors of different rank");
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<DimVector> dimvectors_up_to(std::size_t rank, int bound,
                                        bool include_zero) {
  std::vector<DimVector> out;
  DimVector cur(rank);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == rank) {
      if (include_zero || !cur.is_zero()) out.push_back(cur);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[i] = x;
      rec(i + 1, left - x);
    }
    cur[i] = 0;
  };
  if (bound >= 0) rec(0, bound);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DimVector> dimvectors_below(const DimVector& d, bool include_zero) {
  std::vector<DimVector> out;
  DimVector cur(d.rank());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == d.rank()) {
      if (include_zero || !cur.is_zero()) out.push_back(cur);
      return;
    }
    for (int x = 0; x <= d[i]; ++x) {
      cur[i] = x;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------------- Quiver

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_)
    if (!seen.insert(v).second) throw InvalidInput("duplicate vertex '" + v + "'");
  const std::size_t n = vertices_.size();
  counts_.assign(n, std::vector<int>(n, 0));
  for (auto [s, t] : arrows_) {
    if (s >= n || t >= n) throw InvalidInput("arrow endpoint out of range");
    ++counts_[s][t];
  }
}

Quiver::Quiver(std::vector<std::string> vertices,
               std::vector<std::pair<std::string, std::string>> arrows) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
  std::vector<Arrow> idx;
  for (const auto& [s, t] : arrows) {
    auto is = index.find(s), it = index.find(t);
    if (is == index.end() || it == index.end())
      throw InvalidInput("arrow (" + s + ", " + t + ") names an unknown vertex");
    idx.emplace_back(is->second, it->second);
  }
  *this = Quiver(std::move(vertices), std::move(idx));
}

std::size_t Quiver::index_of(const std::string& id) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), id);
  if (it == vertices_.end()) throw InvalidInput("unknown vertex '" + id + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

int Quiver::loops(std::size_t i) const { return counts_.at(i).at(i); }

int Quiver::arrow_count(std::size_t i, std::size_t j) const {
  return counts_.at(i).at(j);
}

void Quiver::check(const DimVector& d) const {
  if (d.rank() != num_vertices())
    throw InvalidInput("dimension vector " + d.str() + " does not match a quiver with " +
                       std::to_string(num_vertices()) + " vertices");
}

bool Quiver::connected_support(const DimVector& d) const {
  check(d);
  auto supp = d.support();
  if (supp.empty()) return false;
  std::vector<char> in(num_vertices(), 0), seen(num_vertices(), 0);
  for (auto i : supp) in[i] = 1;
  std::vector<std::size_t> stack{supp.front()};
  seen[supp.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < num_vertices(); ++j) {
      if (!in[j] || seen[j]) continue;
      if (counts_[i][j] + counts_[j][i] > 0) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == supp.size();
}

std::string Quiver::canonical() const {
  std::ostringstream os;
  os << "V:";
  for (const auto& v : vertices_) os << v.size() << ':' << v << ';';
  auto sorted = arrows_;
  std::sort(sorted.begin(), sorted.end());
  os << "A:";
  for (auto [s, t] : sorted) os << s << '>' << t << ';';
  return os.str();
}

int euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
  q.check(d);
  q.check(e);
  int r = 0;
  for (std::size_t i = 0; i < d.rank(); ++i) r += d[i] * e[i];
  for (auto [s, t] : q.arrows_) r -= d[s] * e[t];
  return r;
}

int sym_form(const Quiver& q, const DimVector& d, const DimVector& e) {
  return euler_form(q, d, e) + euler_form(q, e, d);
}

Quiver double_quiver(const Quiver& q) {
  auto arrows = q.arrows();
  for (auto [s, t] : q.arrows()) arrows.emplace_back(t, s);
  return Quiver(q.vertices(), std::move(arrows));
}

Quiver triple_quiver(const Quiver& q) {
  auto doubled = double_quiver(q);
  auto arrows = doubled.arrows();
  for (std::size_t i = 0; i < q.num_vertices(); ++i) arrows.emplace_back(i, i);
  return Quiver(q.vertices(), std::move(arrows));
}

Quiver frame(const Quiver& q, const DimVector& f) {
  if (f.rank() != q.num_vertices() || !f.is_nonnegative())
    throw InvalidInput("framing vector " + f.str() + " does not fit the quiver");
  auto vertices = q.vertices();
  std::string inf = "inf";
  while (std::find(vertices.begin(), vertices.end(), inf) != vertices.end()) inf += "'";
  vertices.push_back(inf);
  const std::size_t infty = q.num_vertices();
  auto arrows = q.arrows();
  for (std::size_t i = 0; i < q.num_vertices(); ++i)
    for (int k = 0; k < f[i]; ++k) arrows.emplace_back(infty, i);
  return Quiver(std::move(vertices), std::move(arrows));
}

DimVector framed_vector(const DimVector& d, int m) {
  auto xs = d.entries();
  xs.push_back(m);
  return DimVector(std::move(xs));
}

DimVector unframed_part(const DimVector& d) {
  auto xs = d.entries();
  xs.pop_back();
  return DimVector(std::move(xs));
}

Quiver reverse_arrow(const Quiver& q, std::size_t arrow) {
  auto arrows = q.arrows();
  std::swap(arrows.at(arrow).first, arrows.at(arrow).second);
  return Quiver(q.vertices(), std::move(arrows));
}

Quiver parse_quiver_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("quiver file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("quiver file must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "vertices" && key != "arrows")
      throw InvalidInput("unknown key '" + key + "' in quiver file");
  if (!j.contains("vertices") || !j.contains("arrows"))
    throw InvalidInput("quiver file needs both \"vertices\" and \"arrows\"");
  const auto& jv = j["vertices"];
  const auto& ja = j["arrows"];
  if (!jv.is_array() || !ja.is_array())
    throw InvalidInput("\"vertices\" and \"arrows\" must be arrays");
  std::vector<std::string> vertices;
  for (const auto& v : jv) {
    if (!v.is_string()) throw InvalidInput("vertex identifiers must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> arrows;
  for (const auto& a : ja) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
      throw InvalidInput("each arrow must be a [source, target] pair of strings");
    arrows.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
  }
  return Quiver(std::move(vertices), std::move(arrows));
}

Quiver load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open quiver file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver_json(ss.str());
}

std::string quiver_to_json(const Quiver& q) {
  nlohmann::json j;
  j["vertices"] = q.vertices();
  auto arrows = nlohmann::json::array();
  for (auto [s, t] : q.arrows()) arrows.push_back({q.vertices()[s], q.vertices()[t]});
  j["arrows"] = arrows;
  return j.dump();
}

namespace quivers {

Quiver jordan() { return loops(1); }

Quiver loops(int g) {
  std::vector<Quiver::Arrow> arrows(static_cast<std::size_t>(g), {0, 0});
  return Quiver({"0"}, std::move(arrows));
}

Quiver a1() { return Quiver({"0"}, std::vector<Quiver::Arrow>{}); }

Quiver a2() { return Quiver({"0", "1"}, std::vector<Quiver::Arrow>{{0, 1}}); }

Quiver kronecker() {
  return Quiver({"0", "1"}, std::vector<Quiver::Arrow>{{0, 1}, {0, 1}});
}

}  // namespace quivers

}  // namespace qgk
