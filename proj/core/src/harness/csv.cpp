#include "chisum/harness/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

#include "chisum/error.hpp"

namespace chisum {

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, double>) {
    return format_real(*v);
  } else if constexpr (std::is_same_v<T, bool>) {
    return *v ? "1" : "0";
  } else {
    return std::to_string(*v);
  }
}

// Splits one CSV record starting at `pos`; handles quoted fields spanning lines.
bool next_record(std::string_view text, std::size_t& pos, std::vector<std::string>& fields) {
  fields.clear();
  if (pos >= text.size()) return false;
  std::string field;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::IoError, "unterminated quoted CSV field");
  fields.push_back(std::move(field));
  return true;
}

template <class T>
std::optional<T> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  T out{};
  if constexpr (std::is_same_v<T, bool>) {
    if (s != "0" && s != "1") throw Error(ErrorCode::IoError, "bad boolean cell '" + s + "'");
    return s == "1";
  } else {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      // from_chars does not read "nan" or "inf" spellings produced by printf
      if constexpr (std::is_same_v<T, double>) {
        char* end = nullptr;
        const double d = std::strtod(s.c_str(), &end);
        if (end == s.c_str() + s.size()) return d;
      }
      throw Error(ErrorCode::IoError, "bad numeric cell '" + s + "'");
    }
    return out;
  }
}

}  // namespace

const std::vector<std::string_view>& csv_header() {
  static const std::vector<std::string_view> header{
      "experiment", "p",    "seed", "params", "chi_index", "chi_order", "size_a", "size_b",
      "size_c",     "K",    "L",    "delta",  "lhs",       "rhs",       "ratio",  "aux1",
      "aux2",       "aux3", "aux4", "p_large_enough", "holds", "status", "runtime_ms"};
  return header;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  const auto& header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : records) {
    const std::string cells[] = {
        csv_escape(r.experiment), std::to_string(r.p), std::to_string(r.seed), csv_escape(r.params),
        cell(r.chi_index),        cell(r.chi_order),   cell(r.size_a),         cell(r.size_b),
        cell(r.size_c),           cell(r.K),           cell(r.L),              cell(r.delta),
        cell(r.lhs),              cell(r.rhs),         cell(r.ratio),          cell(r.aux1),
        cell(r.aux2),             cell(r.aux3),        cell(r.aux4),           cell(r.p_large_enough),
        cell(r.holds),            csv_escape(r.status), format_real(r.runtime_ms)};
    for (std::size_t i = 0; i < std::size(cells); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_csv(out, records);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  std::vector<std::string> fields;
  if (!next_record(text, pos, fields)) throw Error(ErrorCode::IoError, "missing CSV header");
  const auto& header = csv_header();
  if (fields.size() != header.size() || !std::equal(fields.begin(), fields.end(), header.begin())) {
    throw Error(ErrorCode::IoError, "unexpected CSV header");
  }
  std::vector<ExperimentRecord> out;
  while (next_record(text, pos, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != header.size()) throw Error(ErrorCode::IoError, "CSV row has the wrong number of fields");
    ExperimentRecord r;
    r.experiment = fields[0];
    r.p = parse_cell<std::uint32_t>(fields[1]).value_or(0);
    r.seed = parse_cell<std::uint64_t>(fields[2]).value_or(0);
    r.params = fields[3];
    r.chi_index = parse_cell<std::uint32_t>(fields[4]);
    r.chi_order = parse_cell<std::uint32_t>(fields[5]);
    r.size_a = parse_cell<std::uint64_t>(fields[6]);
    r.size_b = parse_cell<std::uint64_t>(fields[7]);
    r.size_c = parse_cell<std::uint64_t>(fields[8]);
    r.K = parse_cell<double>(fields[9]);
    r.L = parse_cell<double>(fields[10]);
    r.delta = parse_cell<double>(fields[11]);
    r.lhs = parse_cell<double>(fields[12]);
    r.rhs = parse_cell<double>(fields[13]);
    r.ratio = parse_cell<double>(fields[14]);
    r.aux1 = parse_cell<double>(fields[15]);
    r.aux2 = parse_cell<double>(fields[16]);
    r.aux3 = parse_cell<double>(fields[17]);
    r.aux4 = parse_cell<double>(fields[18]);
    r.p_large_enough = parse_cell<bool>(fields[19]);
    r.holds = parse_cell<bool>(fields[20]);
    r.status = fields[21];
    r.runtime_ms = parse_cell<double>(fields[22]).value_or(0.0);
    out.push_back(std::move(r));
  }
  return out;
}

std::string strip_runtime(std::string_view csv) {
  std::string out;
  std::size_t pos = 0;
  std::vector<std::string> fields;
  while (next_record(csv, pos, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    fields.pop_back();
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_escape(fields[i]);
    out += '\n';
  }
  return out;
}

void sort_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::tie(a.experiment, a.p, a.seed) < std::tie(b.experiment, b.p, b.seed);
  });
}

}  // namespace chisum
