#include "chisum/harness/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "chisum/error.hpp"

namespace chisum {

namespace {

constexpr std::string_view kRoles[] = {"A", "B", "C", "A0", "I", "S"};

std::string_view trim(std::string_view s) {
  const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(',', start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

[[noreturn]] void type_error(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(ErrorCode::TypeError,
              "key '" + std::string(key) + "': '" + std::string(value) + "' is not " + std::string(expected));
}

template <class T>
T read_number(std::string_view key, std::string_view value, std::string_view expected) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) type_error(key, value, expected);
  return out;
}

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T, class Fn>
std::string joined(const std::vector<T>& v, Fn&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::BinaryScan: return "binary-scan";
    case ExperimentKind::TernaryScan: return "ternary-scan";
    case ExperimentKind::WeilCheck: return "weil-check";
    case ExperimentKind::Davenport: return "davenport";
    case ExperimentKind::CrootSisask: return "croot-sisask";
    case ExperimentKind::Counts: return "counts";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::BinaryScan, ExperimentKind::TernaryScan, ExperimentKind::WeilCheck,
                 ExperimentKind::Davenport, ExperimentKind::CrootSisask, ExperimentKind::Counts}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::ConfigError, "unknown experiment '" + std::string(name) + "'");
}

CharSpec parse_char_spec(std::string_view text) {
  text = trim(text);
  CharSpec c;
  if (text == "legendre") return c;
  if (text == "all") {
    c.kind = CharSpec::Kind::All;
    return c;
  }
  const auto space = text.find(' ');
  const auto head = text.substr(0, space);
  const auto tail = space == std::string_view::npos ? std::string_view{} : trim(text.substr(space));
  if (head == "order") {
    c.kind = CharSpec::Kind::Order;
  } else if (head == "index") {
    c.kind = CharSpec::Kind::Index;
  } else {
    type_error("chi", text, "a character spec (legendre, order d, index k, all)");
  }
  c.value = read_number<std::uint64_t>("chi", tail, "a character spec (legendre, order d, index k, all)");
  return c;
}

std::string to_string(const CharSpec& spec) {
  switch (spec.kind) {
    case CharSpec::Kind::Legendre: return "legendre";
    case CharSpec::Kind::All: return "all";
    case CharSpec::Kind::Order: return "order " + std::to_string(spec.value);
    case CharSpec::Kind::Index: return "index " + std::to_string(spec.value);
  }
  return "?";
}

std::vector<Character> resolve_characters(const CharSpec& spec, const PrimeContext& ctx) {
  switch (spec.kind) {
    case CharSpec::Kind::Legendre:
      return {legendre(ctx)};
    case CharSpec::Kind::Order:
      if (spec.value > UINT32_MAX) throw Error(ErrorCode::IndexOutOfRange, "character order too large");
      return {character_of_order(ctx, static_cast<std::uint32_t>(spec.value))};
    case CharSpec::Kind::Index:
      return {character(ctx, static_cast<std::int64_t>(spec.value))};
    case CharSpec::Kind::All: {
      std::vector<Character> out;
      const std::uint32_t n = ctx.group_order();
      for (std::uint32_t d = 2; d <= n; ++d)
        if (n % d == 0) out.push_back(character_of_order(ctx, d));
      return out;
    }
  }
  return {};
}

PolySpec parse_poly_spec(std::string_view text) {
  text = trim(text);
  PolySpec s;
  std::istringstream in{std::string(text)};
  std::string head;
  in >> head;
  std::string token;
  if (head == "random") {
    while (in >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) type_error("polys", text, "a polynomial spec");
      const std::string_view key(token.data(), eq);
      const std::string_view value(token.data() + eq + 1, token.size() - eq - 1);
      const auto v = read_number<std::uint64_t>("polys", value, "a nonnegative integer");
      if (key == "count") s.count = v;
      else if (key == "m_max") s.m_max = v;
      else if (key == "e_max") s.e_max = v;
      else type_error("polys", text, "a polynomial spec (unknown field)");
    }
    if (s.m_max == 0 || s.e_max == 0) type_error("polys", text, "a spec with m_max, e_max >= 1");
    return s;
  }
  if (head == "factors" && (in >> token)) {
    s.random = false;
    std::size_t start = 0;
    while (start <= token.size()) {
      const auto end = token.find(';', start);
      const std::string part = token.substr(start, end == std::string::npos ? std::string::npos : end - start);
      const auto colon = part.find(':');
      if (colon == std::string::npos) type_error("polys", text, "shift:exponent pairs");
      s.factors.emplace_back(read_number<std::int64_t>("polys", std::string_view(part).substr(0, colon), "an integer"),
                             read_number<std::uint64_t>("polys", std::string_view(part).substr(colon + 1), "an exponent"));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    return s;
  }
  type_error("polys", text, "a polynomial spec (random ... | factors ...)");
}

std::string to_string(const PolySpec& s) {
  if (s.random) {
    return "random count=" + std::to_string(s.count) + " m_max=" + std::to_string(s.m_max) +
           " e_max=" + std::to_string(s.e_max);
  }
  std::string out = "factors ";
  for (std::size_t i = 0; i < s.factors.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(s.factors[i].first) + ':' + std::to_string(s.factors[i].second);
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  bool has_experiment = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    const bool first = seen.insert(key).second;
    const auto items = split_list(value);

    auto is_role = [&] {
      for (auto r : kRoles)
        if (r == key) return true;
      return false;
    };

    if (key == "experiment") {
      if (!first) throw Error(ErrorCode::ConfigError, "experiment given twice");
      c.experiment = parse_experiment_kind(value);
      has_experiment = true;
    } else if (key == "p_list") {
      for (auto item : items) {
        const auto p = read_number<std::uint64_t>(key, item, "an integer");
        if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "p_list entry " + std::to_string(p) + " is not an odd prime");
        if (p > kDefaultPrimeLimit) throw Error(ErrorCode::TooLarge, "p_list entry " + std::to_string(p) + " exceeds the prime limit");
        c.p_list.push_back(static_cast<std::uint32_t>(p));
      }
    } else if (is_role()) {
      for (auto item : items) c.sets[key].push_back(parse_generator(item));
    } else if (key == "chi") {
      if (first) c.chi.clear();
      for (auto item : items) c.chi.push_back(parse_char_spec(item));
    } else if (key == "seeds") {
      if (first) c.seeds.clear();
      for (auto item : items) c.seeds.push_back(read_number<std::uint64_t>(key, item, "a seed"));
    } else if (key == "epsilon") {
      for (auto item : items) c.epsilon.push_back(read_number<double>(key, item, "a real"));
    } else if (key == "M") {
      for (auto item : items) c.m_knob.push_back(read_number<double>(key, item, "a real"));
    } else if (key == "q") {
      if (first) c.q.clear();
      for (auto item : items) c.q.push_back(read_number<double>(key, item, "a real"));
    } else if (key == "r") {
      if (first) c.r.clear();
      for (auto item : items) c.r.push_back(read_number<unsigned>(key, item, "a positive integer"));
    } else if (key == "tau") {
      for (auto item : items) c.tau.push_back(read_number<double>(key, item, "a real"));
    } else if (key == "polys") {
      for (auto item : items) c.polys.push_back(parse_poly_spec(item));
    } else if (key == "cs_constant") {
      c.cs_constant = read_number<double>(key, value, "a real");
    } else if (key == "direct_cap") {
      c.direct_cap = read_number<std::uint64_t>(key, value, "an integer");
    } else if (key == "moment_direct_pairs") {
      c.moment_direct_pairs = read_number<std::uint64_t>(key, value, "an integer");
    } else if (key == "moment_expanded_tuples") {
      c.moment_expanded_tuples = read_number<std::uint64_t>(key, value, "an integer");
    } else if (key == "chain_rows") {
      c.chain_rows = read_number<std::uint64_t>(key, value, "an integer");
    } else if (key == "chain_r") {
      c.chain_r = read_number<unsigned>(key, value, "a positive integer");
    } else {
      throw Error(ErrorCode::UnknownKey, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!has_experiment) throw Error(ErrorCode::ConfigError, "missing key 'experiment'");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "experiment = " << to_string(c.experiment) << '\n';
  if (!c.p_list.empty()) out << "p_list = " << joined(c.p_list, [](auto p) { return std::to_string(p); }) << '\n';
  for (const auto& [role, specs] : c.sets) {
    for (const auto& s : specs) out << role << " = " << to_string(s) << '\n';
  }
  out << "chi = " << joined(c.chi, [](const CharSpec& s) { return to_string(s); }) << '\n';
  out << "seeds = " << joined(c.seeds, [](auto s) { return std::to_string(s); }) << '\n';
  if (!c.epsilon.empty()) out << "epsilon = " << joined(c.epsilon, real) << '\n';
  if (!c.m_knob.empty()) out << "M = " << joined(c.m_knob, real) << '\n';
  out << "q = " << joined(c.q, real) << '\n';
  out << "r = " << joined(c.r, [](auto r) { return std::to_string(r); }) << '\n';
  if (!c.tau.empty()) out << "tau = " << joined(c.tau, real) << '\n';
  for (const auto& s : c.polys) out << "polys = " << to_string(s) << '\n';
  out << "cs_constant = " << real(c.cs_constant) << '\n';
  out << "direct_cap = " << c.direct_cap << '\n';
  out << "moment_direct_pairs = " << c.moment_direct_pairs << '\n';
  out << "moment_expanded_tuples = " << c.moment_expanded_tuples << '\n';
  out << "chain_rows = " << c.chain_rows << '\n';
  out << "chain_r = " << c.chain_r << '\n';
  return out.str();
}

}  // namespace chisum
