#include <cstdio>
#include <ostream>
#include <sstream>

#include "iassr/errors.hpp"
#include "iassr/experiments.hpp"

namespace iassr {

namespace {

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "sweep,scheme,metric,mean,stderr,trials\n";
  for (const auto& r : rows)
    os << r.sweep << ',' << r.scheme << ',' << r.metric << ',' << number(r.mean) << ','
       << number(r.stderr_) << ',' << r.trials << '\n';
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "sweep,scheme,metric,mean,stderr,trials")
    throw Error(ErrorCode::Io, "missing CSV header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 6) throw Error(ErrorCode::Io, "bad CSV row: " + line);
    try {
      rows.push_back({f[0], f[1], f[2], std::stod(f[3]), std::stod(f[4]), std::stoi(f[5])});
    } catch (const std::exception&) {
      throw Error(ErrorCode::Io, "bad CSV number: " + line);
    }
  }
  return rows;
}

}  // namespace iassr
