#ifndef QGK_REPORT_HPP
#define QGK_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace qgk {

// A command's output: ordered metadata and named tables of strings.
struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  friend bool operator==(const Section&, const Section&) = default;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Section> sections;
  friend bool operator==(const Report&, const Report&) = default;
};

// TSV layout:
//   # command<TAB>kac
//   # <key><TAB><value>
//   ## <section><TAB><column>...
//   <cell><TAB><cell>...
std::string render_tsv(const Report& r);
std::string render_json(const Report& r);
Report parse_tsv(const std::string& text);
Report parse_json(const std::string& text);

}  // namespace qgk

#endif  // QGK_REPORT_HPP
