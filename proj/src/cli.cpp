#include "qgk/cli.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "qgk/cuspidal.hpp"
#include "qgk/errors.hpp"
#include "qgk/nakajima.hpp"
#include "qgk/report.hpp"
#include "qgk/verify.hpp"

namespace qgk {

namespace {

constexpr const char* kCacheSchema = "qgk-cache-v1";

struct Config {
  std::string command;
  std::string quiver_path;
  int bound = 0;
  std::string flavour = "plain";
  std::string fields_text;
  std::string format = "tsv";
  std::string cache_dir;
  int workers = 1;
  std::string method = "hua";
  std::string d_text;
  std::string framing_text;
  std::string weights_path;
  bool from_kac = false;
};

bool is_prime_power(int n) {
  if (n < 2) return false;
  int p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<int> parse_fields(const std::string& text) {
  if (text.empty()) return kDefaultFields;
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("bad field size '" + item + "'");
    }
    if (used != item.size()) throw InvalidInput("bad field size '" + item + "'");
    if (!is_prime_power(v) || v > kBruteForceMaxField)
      throw InvalidInput("field sizes must be prime powers <= " + std::to_string(kBruteForceMaxField));
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("empty field list");
  if (std::set<int>(out.begin(), out.end()).size() != out.size()) throw InvalidInput("field sizes must be distinct");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

// Cache directory: --cache-dir, else QGK_CACHE_DIR, else none.
std::string cache_dir(const Config& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv("QGK_CACHE_DIR"); env && *env) return env;
  return {};
}

std::string cache_key(const Config& c, const Quiver& q, const std::vector<int>& fields) {
  std::ostringstream k;
  k << kCacheSchema << '\n' << quiver_to_json(q) << '\n' << c.command << '\n' << c.bound << '\n' << c.flavour << '\n';
  if (c.command == "kac") k << c.method << '\n';
  if (c.flavour != "plain" || c.method == "oracle")
    for (int f : fields) k << f << ',';
  k << '\n' << c.d_text << '\n' << c.framing_text << '\n' << c.from_kac << '\n';
  if (!c.weights_path.empty()) k << read_file(c.weights_path);
  return sha256_hex(k.str());
}

std::optional<Report> cache_load(const std::filesystem::path& file) {
  std::error_code ec;
  if (!std::filesystem::exists(file, ec)) return std::nullopt;
  try {
    return parse_json(read_file(file.string()));
  } catch (const Error&) {
    return std::nullopt;
  }
}

void cache_store(const std::filesystem::path& dir, const std::filesystem::path& file, const Report& r) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create cache directory " + dir.string());
  static int counter = 0;
  const std::filesystem::path tmp =
      dir / (file.filename().string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InvalidInput("cannot write to cache directory " + dir.string());
    out << render_json(r);
    if (!out) throw InvalidInput("cannot write to cache directory " + dir.string());
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InvalidInput("cannot move cache entry into " + dir.string());
  }
}

DimVector parse_d(const std::string& text, const Quiver& q) { return DimVector::parse(text, q.num_vertices()); }

std::vector<DimVector> requested_ds(const Config& c, const Quiver& q) {
  if (c.d_text.empty()) return dimvectors_up_to(q.num_vertices(), c.bound);
  const DimVector d = parse_d(c.d_text, q);
  if (!d.is_nonnegative() || d.is_zero()) throw InvalidInput("--d must be nonzero and nonnegative");
  if (d.total() > c.bound) throw InvalidInput("--d lies beyond --bound");
  return {d};
}

Section poly_section(const std::string& name, const std::string& column, const std::map<DimVector, QPoly>& values) {
  Section s{name, {"d", column}, {}};
  for (const auto& [d, v] : values)
    if (!v.is_zero()) s.rows.push_back({d.str(), v.str()});
  return s;
}

Report cmd_roots(const Config& c, const Quiver& q) {
  const RootTables t(CartanDatum::of(q), c.bound);
  Report r{"roots", {{"bound", std::to_string(c.bound)}}, {}};
  Section s{"phi_plus", {"d", "class", "p", "sigma"}, {}};
  for (const auto& e : t.phi_plus())
    s.rows.push_back({e.d.str(), to_string(e.cls), std::to_string(e.p), e.in_sigma ? "yes" : "no"});
  r.sections.push_back(std::move(s));
  return r;
}

Report cmd_kac(const Config& c, const Quiver& q, Flavour flavour, const std::vector<int>& fields) {
  Report r{"kac", {{"bound", std::to_string(c.bound)}, {"flavour", to_string(flavour)}, {"method", c.method}}, {}};
  KacTable t;
  if (c.method == "hua") {
    if (flavour != Flavour::kPlain) throw InvalidInput("--method hua computes the plain flavour only; use --method oracle");
    t = hua_kac(q, c.bound);
  } else {
    std::string fs;
    for (int f : fields) fs += (fs.empty() ? "" : ",") + std::to_string(f);
    r.meta.emplace_back("fields", fs);
    t = oracle_kac_table(q, c.bound, flavour, fields);
  }
  r.sections.push_back(poly_section("kac", "A", t.values));
  return r;
}

CuspidalTable cuspidal_table(const Config& c, const Quiver& q, Flavour flavour, const std::vector<int>& fields) {
  CuspidalOptions o;
  o.gkm.workers = c.workers;
  o.fields = fields;
  return absolutely_cuspidal(q, c.bound, flavour, o);
}

Report cmd_cuspidal(const Config& c, const Quiver& q, Flavour flavour, const std::vector<int>& fields) {
  const CuspidalTable t = cuspidal_table(c, q, flavour, fields);
  Report r{"cuspidal", {{"bound", std::to_string(c.bound)}, {"flavour", to_string(flavour)}}, {}};
  r.sections.push_back(poly_section("cabs", "C_abs", t.abs));
  r.sections.push_back(poly_section("cusp", "C", t.cusp));
  return r;
}

Report cmd_ip(const Config& c, const Quiver& q) {
  const CuspidalTable t = cuspidal_table(c, q, Flavour::kPlain, kDefaultFields);
  Report r{"ip",
           {{"bound", std::to_string(c.bound)},
            {"variable", "q stands for v; v^j counts shifted cohomological degree j"}},
           {}};
  Section s{"ip", {"d", "IP"}, {}};
  for (const auto& d : requested_ds(c, q)) s.rows.push_back({d.str(), ip_general(t, d).str()});
  r.sections.push_back(std::move(s));
  return r;
}

Report cmd_canonical(const Config& c, const Quiver& q) {
  const SigmaOracle sigma(CartanDatum::of(q));
  Report r{"canonical-decomp", {{"bound", std::to_string(c.bound)}}, {}};
  Section s{"canonical", {"d", "decomposition"}, {}};
  for (const auto& d : requested_ds(c, q)) s.rows.push_back({d.str(), to_string(canonical_decomposition(sigma, d))});
  r.sections.push_back(std::move(s));
  return r;
}

WeightFunction load_weights(const std::string& path, const Quiver& q) {
  WeightFunction p(q.num_vertices());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("weight file is not JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw InvalidInput("weight file must map dimension vectors to polynomials");
  for (const auto& [key, value] : j.items()) p.set(parse_d(key, q), QPoly::from_json(value));
  return p;
}

Report cmd_gkm(const Config& c, const Quiver& q, Flavour flavour, const std::vector<int>& fields) {
  if (c.from_kac == !c.weights_path.empty()) throw InvalidInput("gkm-dims needs exactly one of --weights or --from-kac");
  const RootTables roots(CartanDatum::of(q), c.bound);
  WeightFunction p(q.num_vertices());
  if (c.from_kac) {
    for (const auto& [d, v] : cuspidal_table(c, q, flavour, fields).abs) p.set(d, v);
  } else {
    p = load_weights(c.weights_path, q);
  }
  GkmOptions o;
  o.workers = c.workers;
  const GkmDimTable t = gkm_dims(roots, p, c.bound, o);
  Report r{"gkm-dims", {{"bound", std::to_string(c.bound)}, {"source", c.from_kac ? "kac" : "weights"}}, {}};
  std::map<DimVector, QPoly> chars;
  for (const auto& [key, n] : t.dims) chars[key.first] += QPoly::monomial(n, key.second);
  r.sections.push_back(poly_section("gkm", "character", chars));
  return r;
}

Report cmd_nakajima(const Config& c, const Quiver& q) {
  if (c.framing_text.empty()) throw InvalidInput("nakajima-decomp needs --framing");
  const DimVector f = parse_d(c.framing_text, q);
  GkmOptions o;
  o.workers = c.workers;
  const LowestWeightDecomposition dec = lw_decompose(q, f, c.bound, o);
  Report r{"nakajima-decomp",
           {{"bound", std::to_string(c.bound)},
            {"framing", f.str()},
            {"convention", "characters in q^-1; multiplicity is an IP polynomial printed with q standing for v"}},
           {}};
  Section framed{"framed", {"e", "F"}, {}};
  for (const auto& [e, v] : dec.framed.terms()) framed.rows.push_back({e.str(), v.str()});
  r.sections.push_back(std::move(framed));
  Section blocks{"blocks", {"d", "multiplicity", "lambda"}, {}};
  for (const auto& b : dec.blocks) {
    std::string lambda;
    for (int x : b.lambda) lambda += (lambda.empty() ? "" : ",") + std::to_string(x);
    blocks.rows.push_back({b.d.str(), b.multiplicity.str(), lambda});
  }
  r.sections.push_back(std::move(blocks));
  for (const auto& b : dec.blocks) {
    Section s{"chl:" + b.d.str(), {"e", "chL"}, {}};
    for (const auto& [e, v] : b.chl.terms()) s.rows.push_back({e.str(), v.str()});
    r.sections.push_back(std::move(s));
  }
  return r;
}

Report cmd_verify(const Config& c, const Quiver& q, bool& failed) {
  VerifyOptions o;
  o.workers = c.workers;
  Report r{"verify", {{"bound", std::to_string(c.bound)}}, {}};
  Section s{"verify", {"property", "result", "detail"}, {}};
  failed = false;
  for (const auto& p : verify_quiver(q, c.bound, o)) {
    failed = failed || p.outcome == Outcome::kFail;
    std::string detail = p.detail;
    std::replace(detail.begin(), detail.end(), '\t', ' ');
    std::replace(detail.begin(), detail.end(), '\n', ' ');
    s.rows.push_back({p.name, to_string(p.outcome), detail});
  }
  r.sections.push_back(std::move(s));
  return r;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("quiver", c.quiver_path, "quiver JSON file")->required();
  sub->add_option("--bound", c.bound, "largest total degree |d|")->required()->check(CLI::Range(1, 1000));
  sub->add_option("--flavour", c.flavour, "plain, nilpotent or one_nilpotent");
  sub->add_option("--fields", c.fields_text, "oracle field sizes, e.g. 2,3,4");
  sub->add_option("--format", c.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  sub->add_option("--cache-dir", c.cache_dir, "memo cache directory (default: $QGK_CACHE_DIR)");
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 256));
}

int execute(const Config& c, std::ostream& out, std::ostream& err) {
  const Quiver q = load_quiver(c.quiver_path);
  const Flavour flavour = parse_flavour(c.flavour);
  const std::vector<int> fields = parse_fields(c.fields_text);

  if (c.command == "verify") {
    bool failed = false;
    const Report r = cmd_verify(c, q, failed);
    out << (c.format == "json" ? render_json(r) : render_tsv(r));
    if (failed) {
      for (const auto& row : r.sections.front().rows)
        if (row[1] == "FAIL") err << "invariant violation: " << row[0] << ": " << row[2] << '\n';
      return kExitInvariant;
    }
    return kExitOk;
  }

  const std::string dir = cache_dir(c);
  std::filesystem::path file;
  std::optional<Report> report;
  if (!dir.empty()) {
    file = std::filesystem::path(dir) / (cache_key(c, q, fields) + ".json");
    report = cache_load(file);
  }
  if (!report) {
    if (c.command == "roots")
      report = cmd_roots(c, q);
    else if (c.command == "kac")
      report = cmd_kac(c, q, flavour, fields);
    else if (c.command == "cuspidal")
      report = cmd_cuspidal(c, q, flavour, fields);
    else if (c.command == "ip")
      report = cmd_ip(c, q);
    else if (c.command == "canonical-decomp")
      report = cmd_canonical(c, q);
    else if (c.command == "gkm-dims")
      report = cmd_gkm(c, q, flavour, fields);
    else if (c.command == "nakajima-decomp")
      report = cmd_nakajima(c, q);
    else
      throw InvalidInput("unknown command " + c.command);
    if (!dir.empty()) cache_store(dir, file, *report);
  }
  out << (c.format == "json" ? render_json(*report) : render_tsv(*report));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kac polynomials, cuspidal polynomials and GKM characters of quivers", "qgk"};
  app.require_subcommand(1);
  Config c;
  auto* roots = app.add_subcommand("roots", "Sigma and Phi+ with root classes");
  add_common(roots, c);
  auto* kac = app.add_subcommand("kac", "Kac polynomials");
  add_common(kac, c);
  kac->add_option("--method", c.method, "hua or oracle")->check(CLI::IsMember({"hua", "oracle"}));
  auto* cusp = app.add_subcommand("cuspidal", "absolutely cuspidal and cuspidal polynomials");
  add_common(cusp, c);
  auto* ip = app.add_subcommand("ip", "intersection Poincare polynomials");
  add_common(ip, c);
  ip->add_option("--d", c.d_text, "a single dimension vector");
  auto* canon = app.add_subcommand("canonical-decomp", "canonical decompositions");
  add_common(canon, c);
  canon->add_option("--d", c.d_text, "a single dimension vector");
  auto* gkm = app.add_subcommand("gkm-dims", "graded dimensions of a GKM positive half");
  add_common(gkm, c);
  gkm->add_option("--weights", c.weights_path, "JSON map from dimension vector to polynomial");
  gkm->add_flag("--from-kac", c.from_kac, "use C^abs of the quiver as the weight function");
  auto* naka = app.add_subcommand("nakajima-decomp", "lowest-weight decomposition of the framed character");
  add_common(naka, c);
  naka->add_option("--framing", c.framing_text, "framing vector, e.g. 1,0")->required();
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    return execute(c, out, err);
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
}

int exit_code_for(std::exception_ptr error, std::ostream& err) {
  try {
    std::rethrow_exception(error);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const CapacityExceeded& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace qgk
