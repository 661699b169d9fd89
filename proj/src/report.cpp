#include "qgk/report.hpp"

#include <json.hpp>
#include <sstream>

#include "qgk/errors.hpp"

namespace qgk {

namespace {

void check_cell(const std::string& s) {
  if (s.find_first_of("\t\n\r") != std::string::npos) throw InvalidInput("report cell contains a tab or newline");
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

std::string render_tsv(const Report& r) {
  std::ostringstream out;
  check_cell(r.command);
  out << "# command\t" << r.command << '\n';
  for (const auto& [k, v] : r.meta) {
    check_cell(k);
    check_cell(v);
    out << "# " << k << '\t' << v << '\n';
  }
  for (const auto& s : r.sections) {
    check_cell(s.name);
    out << "## " << s.name;
    for (const auto& c : s.columns) {
      check_cell(c);
      out << '\t' << c;
    }
    out << '\n';
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        check_cell(row[i]);
        out << (i ? "\t" : "") << row[i];
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.meta) meta[k] = v;
  j["meta"] = meta;
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : r.sections) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["columns"] = s.columns;
    js["rows"] = s.rows;
    j["sections"].push_back(js);
  }
  return j.dump(2) + "\n";
}

Report parse_tsv(const std::string& text) {
  Report r;
  std::istringstream in(text);
  std::string line;
  bool have_command = false;
  while (std::getline(in, line)) {
    if (line.rfind("## ", 0) == 0) {
      auto cells = split_tabs(line.substr(3));
      Section s;
      s.name = cells.front();
      s.columns.assign(cells.begin() + 1, cells.end());
      r.sections.push_back(std::move(s));
    } else if (line.rfind("# ", 0) == 0) {
      auto cells = split_tabs(line.substr(2));
      if (cells.size() != 2) throw InvalidInput("malformed TSV metadata line: " + line);
      if (!have_command) {
        if (cells[0] != "command") throw InvalidInput("TSV report must start with the command line");
        r.command = cells[1];
        have_command = true;
      } else {
        r.meta.emplace_back(cells[0], cells[1]);
      }
    } else {
      if (r.sections.empty()) throw InvalidInput("TSV row outside a section: " + line);
      r.sections.back().rows.push_back(split_tabs(line));
    }
  }
  if (!have_command) throw InvalidInput("empty TSV report");
  return r;
}

Report parse_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
    Report r;
    r.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("meta").items()) r.meta.emplace_back(k, v.get<std::string>());
    for (const auto& js : j.at("sections")) {
      Section s;
      s.name = js.at("name").get<std::string>();
      s.columns = js.at("columns").get<std::vector<std::string>>();
      s.rows = js.at("rows").get<std::vector<std::vector<std::string>>>();
      r.sections.push_back(std::move(s));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed JSON report: ") + e.what());
  }
}

}  // namespace qgk
