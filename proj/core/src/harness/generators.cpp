#include "chisum/harness/generators.hpp"

#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "chisum/error.hpp"
#include "chisum/setops.hpp"

namespace chisum {

namespace {

[[noreturn]] void bad(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::BadSpec, "generator '" + std::string(text) + "': " + why);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find(sep, start);
    const std::size_t stop = end == std::string_view::npos ? s.size() : end;
    out.push_back(s.substr(start, stop - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <class T>
T number(std::string_view text, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    bad(text, "cannot read '" + std::string(value) + "' as an integer");
  }
  return out;
}

template <class T>
std::vector<T> number_list(std::string_view text, std::string_view value) {
  std::vector<T> out;
  for (auto part : split(value, ';')) out.push_back(number<T>(text, part));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(v[i]);
  }
  return out;
}

struct KindName {
  GeneratorKind kind;
  std::string_view name;
};

constexpr KindName kKinds[] = {
    {GeneratorKind::Interval, "interval"}, {GeneratorKind::Ap, "ap"},
    {GeneratorKind::Gap, "gap"},           {GeneratorKind::Geometric, "geometric"},
    {GeneratorKind::Random, "random"},     {GeneratorKind::Residues, "residues"},
    {GeneratorKind::Full, "full"},         {GeneratorKind::Elements, "elements"},
    {GeneratorKind::Negation, "neg"},
};

std::string_view kind_name(GeneratorKind k) {
  for (const auto& kn : kKinds)
    if (kn.kind == k) return kn.name;
  return "?";
}

FpSet random_subset(std::uint32_t p, std::uint64_t n, bool nozero, std::uint64_t seed) {
  const std::uint32_t lo = nozero ? 1 : 0;
  std::vector<Element> pool(p - lo);
  std::iota(pool.begin(), pool.end(), lo);
  std::mt19937_64 engine(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + uniform_below(engine, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return FpSet::from_elements(p, std::span<const Element>(pool));
}

}  // namespace

GeneratorSpec parse_generator(std::string_view text) {
  const auto tokens = words(text);
  if (tokens.empty()) bad(text, "empty spec");
  GeneratorSpec spec;
  bool found = false;
  for (const auto& kn : kKinds) {
    if (kn.name == tokens[0]) {
      spec.kind = kn.kind;
      found = true;
    }
  }
  if (!found) bad(text, "unknown kind '" + std::string(tokens[0]) + "'");

  std::size_t first = 1;
  if (spec.kind == GeneratorKind::Negation) {
    if (tokens.size() < 2) bad(text, "neg needs a role");
    spec.role = std::string(tokens[1]);
    first = 2;
  } else if (spec.kind == GeneratorKind::Elements) {
    if (tokens.size() < 2) bad(text, "elements needs a list");
    spec.elements = number_list<std::int64_t>(text, tokens[1]);
    first = 2;
  }

  bool has_n = false, has_steps = false, has_bounds = false, has_r = false;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string_view::npos) bad(text, "expected key=value, got '" + std::string(tokens[i]) + "'");
    const auto key = tokens[i].substr(0, eq);
    const auto value = tokens[i].substr(eq + 1);
    if (key == "nozero") {
      spec.nozero = number<int>(text, value) != 0;
    } else if (key == "seed" && spec.kind == GeneratorKind::Random) {
      spec.seed = number<std::uint64_t>(text, value);
    } else if (key == "n" && (spec.kind == GeneratorKind::Interval || spec.kind == GeneratorKind::Ap ||
                              spec.kind == GeneratorKind::Geometric || spec.kind == GeneratorKind::Random)) {
      spec.n = number<std::uint64_t>(text, value);
      has_n = true;
    } else if (key == "a" && (spec.kind == GeneratorKind::Interval || spec.kind == GeneratorKind::Ap ||
                              spec.kind == GeneratorKind::Geometric)) {
      spec.a = number<std::int64_t>(text, value);
    } else if (key == "a0" && spec.kind == GeneratorKind::Gap) {
      spec.a = number<std::int64_t>(text, value);
    } else if (key == "d" && spec.kind == GeneratorKind::Ap) {
      spec.d = number<std::int64_t>(text, value);
    } else if (key == "r" && spec.kind == GeneratorKind::Geometric) {
      spec.r = number<std::int64_t>(text, value);
      has_r = true;
    } else if (key == "steps" && spec.kind == GeneratorKind::Gap) {
      spec.steps = number_list<std::int64_t>(text, value);
      has_steps = true;
    } else if (key == "bounds" && spec.kind == GeneratorKind::Gap) {
      spec.bounds = number_list<std::uint64_t>(text, value);
      has_bounds = true;
    } else {
      bad(text, "key '" + std::string(key) + "' does not apply to " + std::string(kind_name(spec.kind)));
    }
  }
  switch (spec.kind) {
    case GeneratorKind::Interval:
    case GeneratorKind::Ap:
    case GeneratorKind::Random:
      if (!has_n) bad(text, "missing n");
      break;
    case GeneratorKind::Geometric:
      if (!has_n || !has_r) bad(text, "geometric needs r and n");
      break;
    case GeneratorKind::Gap:
      if (!has_steps || !has_bounds) bad(text, "gap needs steps and bounds");
      if (spec.steps.size() != spec.bounds.size()) bad(text, "steps and bounds differ in length");
      break;
    default:
      break;
  }
  return spec;
}

std::string to_string(const GeneratorSpec& s) {
  std::ostringstream out;
  out << kind_name(s.kind);
  switch (s.kind) {
    case GeneratorKind::Interval:
      out << " a=" << s.a << " n=" << s.n;
      break;
    case GeneratorKind::Ap:
      out << " a=" << s.a << " d=" << s.d << " n=" << s.n;
      break;
    case GeneratorKind::Gap:
      out << " a0=" << s.a << " steps=" << join(s.steps) << " bounds=" << join(s.bounds);
      break;
    case GeneratorKind::Geometric:
      out << " a=" << s.a << " r=" << s.r << " n=" << s.n;
      break;
    case GeneratorKind::Random:
      out << " n=" << s.n;
      if (s.seed) out << " seed=" << *s.seed;
      break;
    case GeneratorKind::Elements:
      out << ' ' << join(s.elements);
      break;
    case GeneratorKind::Negation:
      out << ' ' << s.role;
      break;
    case GeneratorKind::Residues:
    case GeneratorKind::Full:
      break;
  }
  if (s.nozero) out << " nozero=1";
  return out.str();
}

FpSet generate_set(const GeneratorSpec& spec, const PrimeContext& ctx, std::uint64_t row_seed) {
  const std::uint32_t p = ctx.modulus();
  const std::string text = to_string(spec);
  FpSet out(p);
  switch (spec.kind) {
    case GeneratorKind::Interval:
      if (spec.n > p) bad(text, "n exceeds p");
      out = FpSet::interval(p, spec.a, static_cast<std::uint32_t>(spec.n));
      break;
    case GeneratorKind::Ap: {
      if (reduce(spec.d, p) == 0) bad(text, "step is 0 mod p");
      if (spec.n > p) bad(text, "n exceeds p");
      std::vector<std::int64_t> xs;
      for (std::uint64_t j = 0; j < spec.n; ++j)
        xs.push_back(static_cast<std::int64_t>((reduce(spec.a, p) + j * reduce(spec.d, p)) % p));
      out = FpSet::from_elements(p, std::span<const std::int64_t>(xs));
      break;
    }
    case GeneratorKind::Gap: {
      Gap g;
      g.base = spec.a;
      g.steps = spec.steps;
      g.bounds = spec.bounds;
      out = gap_enumerate(g, p);
      break;
    }
    case GeneratorKind::Geometric: {
      const Element a = reduce(spec.a, p);
      const Element r = reduce(spec.r, p);
      if (a == 0 || r == 0) bad(text, "a and r must be nonzero mod p");
      std::vector<Element> xs;
      std::uint64_t x = a;
      for (std::uint64_t j = 0; j < spec.n; ++j) {
        xs.push_back(static_cast<Element>(x));
        x = x * r % p;
      }
      out = FpSet::from_elements(p, std::span<const Element>(xs));
      break;
    }
    case GeneratorKind::Random:
      if (spec.n > p - (spec.nozero ? 1u : 0u)) bad(text, "n exceeds the available elements");
      out = random_subset(p, spec.n, spec.nozero, spec.seed.value_or(row_seed));
      break;
    case GeneratorKind::Residues: {
      std::vector<Element> xs;
      for (std::uint64_t x = 1; x < p; ++x) xs.push_back(static_cast<Element>(x * x % p));
      out = FpSet::from_elements(p, std::span<const Element>(xs));
      break;
    }
    case GeneratorKind::Full:
      out = FpSet::full(p);
      break;
    case GeneratorKind::Elements:
      out = FpSet::from_elements(p, std::span<const std::int64_t>(spec.elements));
      break;
    case GeneratorKind::Negation:
      bad(text, "neg must be resolved against another role");
  }
  return spec.nozero ? out.without(0) : out;
}

}  // namespace chisum
