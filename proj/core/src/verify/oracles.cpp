#include "chisum/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace chisum::oracle {

namespace {

std::uint64_t md(std::int64_t x, std::uint32_t p) {
  const std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + p : r);
}

std::uint64_t power(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

Elems normalise(std::vector<bool> member) {
  Elems out;
  for (std::uint32_t x = 0; x < member.size(); ++x)
    if (member[x]) out.push_back(x);
  return out;
}

}  // namespace

std::uint32_t primitive_root(std::uint32_t p) {
  if (p == 2) return 1;
  for (std::uint32_t g = 2; g < p; ++g) {
    std::uint64_t x = 1;
    std::uint32_t order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  throw std::logic_error("no primitive root");
}

BruteCharacter::BruteCharacter(std::uint32_t p, std::uint32_t index) : p_(p), index_(index), log_(p, 0) {
  const std::uint32_t g = primitive_root(p);
  std::uint64_t x = 1;
  for (std::uint32_t k = 0; k + 1 < p; ++k) {
    log_[x] = k;
    x = x * g % p;
  }
}

std::complex<double> BruteCharacter::operator()(std::uint64_t x) const {
  x %= p_;
  if (x == 0) return {0.0, 0.0};
  const std::uint64_t j = static_cast<std::uint64_t>(index_) * log_[x] % (p_ - 1);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p_ - 1));
}

Elems combine(const Elems& a, const Elems& b, Op op, std::uint32_t p) {
  std::vector<bool> member(p, false);
  for (auto x : a) {
    for (auto y : b) {
      switch (op) {
        case Op::Sum: member[(x + y) % p] = true; break;
        case Op::Difference: member[(x + p - y) % p] = true; break;
        case Op::Product: member[static_cast<std::uint64_t>(x) * y % p] = true; break;
        case Op::Quotient:
          if (y != 0) member[static_cast<std::uint64_t>(x) * power(y, p - 2, p) % p] = true;
          break;
      }
    }
  }
  return normalise(member);
}

std::uint64_t additive_energy(const Elems& a, std::uint32_t p) {
  std::uint64_t n = 0;
  for (auto a1 : a)
    for (auto a2 : a)
      for (auto a3 : a)
        for (auto a4 : a) n += (a1 + a2) % p == (a3 + a4) % p;
  return n;
}

std::uint64_t multiplicative_energy(const Elems& a, std::uint32_t p) {
  std::uint64_t n = 0;
  for (std::uint64_t a1 : a)
    for (std::uint64_t a2 : a)
      for (std::uint64_t a3 : a)
        for (std::uint64_t a4 : a) n += a1 * a2 % p == a3 * a4 % p;
  return n;
}

std::uint64_t system_count(const Elems& a, const Elems& b, const Elems& c, std::uint32_t p) {
  // (b1 + c1)/x = (b1' + c1')/y and (b2 + c2)/x = (b2' + c2')/y, cleared of denominators
  std::uint64_t n = 0;
  for (std::uint64_t x : a)
    for (std::uint64_t y : a)
      for (auto b1 : b)
        for (auto c1 : c)
          for (auto b1p : b)
            for (auto c1p : c) {
              if (y * (b1 + c1) % p != x * (b1p + c1p) % p) continue;
              for (auto b2 : b)
                for (auto c2 : c)
                  for (auto b2p : b)
                    for (auto c2p : c) n += y * (b2 + c2) % p == x * (b2p + c2p) % p;
            }
  return n;
}

std::uint64_t sextuple_count(const Elems& a, const Elems& b, const Elems& c, std::uint32_t p) {
  std::uint64_t n = 0;
  for (std::uint64_t a1 : a)
    for (std::uint64_t a2 : a)
      for (auto b1 : b)
        for (auto b2 : b)
          for (auto c1 : c)
            for (auto c2 : c) n += a1 * (b1 + c1) % p == a2 * (b2 + c2) % p;
  return n;
}

std::uint64_t incidence_count(const Elems& a, const Elems& b, const Elems& s, const Elems& c, std::uint32_t p) {
  std::uint64_t n = 0;
  for (std::uint64_t x : a)
    for (auto y : b)
      for (std::uint64_t slope : s)
        for (auto icpt : c) n += slope * x % p == (y + icpt) % p;
  return n;
}

std::vector<std::int64_t> f_spectrum(const Elems& b, const Elems& c, std::uint32_t p) {
  std::vector<bool> in_s(p, false);
  for (auto x : b)
    for (auto y : c) in_s[(x + y) % p] = true;
  std::vector<std::int64_t> f(p, 0);
  for (auto x : b)
    for (auto y : c)
      for (std::uint64_t s = 1; s < p; ++s)
        if (in_s[s]) ++f[(x + y) % p * power(s, p - 2, p) % p];
  return f;
}

std::vector<std::int64_t> g_spectrum(const Elems& b, const Elems& c, std::uint32_t p) {
  std::vector<std::int64_t> g(p, 0);
  for (auto b1 : b)
    for (auto c1 : c)
      for (auto b2 : b)
        for (auto c2 : c) {
          const std::uint64_t den = (b2 + c2) % p;
          if (den == 0) continue;
          ++g[(b1 + c1) % p * power(den, p - 2, p) % p];
        }
  return g;
}

std::vector<std::int64_t> h_spectrum(const Elems& a, std::uint32_t p) {
  std::vector<std::int64_t> h(p, 0);
  for (std::uint64_t x : a)
    for (auto y : a) ++h[x * power(y, p - 2, p) % p];
  return h;
}

std::complex<double> binary_sum(const Elems& a, const Elems& b, const BruteCharacter& chi) {
  std::complex<double> s{0.0, 0.0};
  for (auto x : a)
    for (auto y : b) s += chi(static_cast<std::uint64_t>(x) + y);
  return s;
}

std::complex<double> ternary_sum(const Elems& a, const Elems& b, const Elems& c, const BruteCharacter& chi) {
  std::complex<double> s{0.0, 0.0};
  for (auto x : a)
    for (auto y : b)
      for (auto z : c) s += chi(static_cast<std::uint64_t>(x) + y + z);
  return s;
}

std::complex<double> weil_sum(const BruteCharacter& chi, const std::vector<std::pair<std::uint32_t, std::uint64_t>>& factors) {
  const std::uint32_t p = chi.modulus();
  std::complex<double> s{0.0, 0.0};
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 1;
    for (const auto& [t, e] : factors) v = v * power(x + t, e, p) % p;
    s += chi(v);
  }
  return s;
}

double davenport_moment(const BruteCharacter& chi, const Elems& interval, unsigned r) {
  const std::uint32_t p = chi.modulus();
  double total = 0.0;
  for (std::uint64_t u1 = 0; u1 < p; ++u1) {
    for (std::uint64_t u2 = 0; u2 < p; ++u2) {
      std::complex<double> inner{0.0, 0.0};
      for (auto t : interval) inner += chi(u1 + t) * std::conj(chi(u2 + t));
      total += std::pow(std::norm(inner), static_cast<double>(r));
    }
  }
  return total;
}

namespace {

struct CliqueWalk {
  std::uint32_t p;
  std::vector<bool> residue;
  std::uint32_t best = 0;

  bool joined(std::uint32_t x, std::uint32_t y) const { return residue[(x + p - y) % p]; }

  void extend(Elems& clique, std::uint32_t next) {
    best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(clique.size()));
    for (std::uint32_t v = next; v < p; ++v) {
      bool ok = true;
      for (auto u : clique) ok = ok && joined(u, v);
      if (!ok) continue;
      clique.push_back(v);
      extend(clique, v + 1);
      clique.pop_back();
    }
  }
};

}  // namespace

std::uint32_t paley_clique(std::uint32_t p) {
  CliqueWalk walk{p, std::vector<bool>(p, false)};
  for (std::uint64_t x = 1; x < p; ++x) walk.residue[x * x % p] = true;
  Elems clique;
  walk.extend(clique, 0);
  return walk.best;
}

bool is_paley_clique(const Elems& clique, std::uint32_t p) {
  std::vector<bool> residue(p, false);
  for (std::uint64_t x = 1; x < p; ++x) residue[x * x % p] = true;
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j)
      if (!residue[(clique[i] + p - clique[j]) % p]) return false;
  return true;
}

std::vector<std::int64_t> convolve_indicator(const std::vector<std::int64_t>& f, const Elems& a, std::uint32_t p) {
  std::vector<std::int64_t> out(p, 0);
  for (std::uint32_t x = 0; x < p; ++x)
    for (auto y : a) out[x] += f[(x + p - y) % p];
  return out;
}

std::uint64_t shift_square_deviation(const std::vector<std::int64_t>& g, std::uint32_t t, std::uint32_t p) {
  std::uint64_t s = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::int64_t d = g[(x + t) % p] - g[x];
    s += static_cast<std::uint64_t>(d * d);
  }
  return s;
}

std::uint64_t shift_l1_deviation(const std::vector<std::int64_t>& g, std::uint32_t t, std::uint32_t p) {
  std::uint64_t s = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::int64_t d = g[(x + t) % p] - g[x];
    s += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  return s;
}

namespace {

void gap_values(std::int64_t base, const std::vector<std::int64_t>& steps, const std::vector<std::uint64_t>& bounds,
                std::uint32_t p, std::size_t j, std::uint64_t acc, std::vector<std::uint64_t>& out) {
  if (j == steps.size()) {
    out.push_back((acc + md(base, p)) % p);
    return;
  }
  for (std::uint64_t x = 0; x < bounds[j]; ++x) gap_values(base, steps, bounds, p, j + 1, (acc + x * md(steps[j], p)) % p, out);
}

}  // namespace

std::uint64_t gap_collisions(std::int64_t base, const std::vector<std::int64_t>& steps,
                             const std::vector<std::uint64_t>& bounds, std::uint32_t p) {
  std::vector<std::uint64_t> values;
  gap_values(base, steps, bounds, p, 0, 0, values);
  std::map<std::uint64_t, std::uint64_t> seen;
  for (auto v : values) ++seen[v];
  std::uint64_t pairs = 0;
  for (const auto& [v, k] : seen) pairs += k * (k - 1) / 2;
  return pairs;
}

Elems gap_elements(std::int64_t base, const std::vector<std::int64_t>& steps, const std::vector<std::uint64_t>& bounds,
                   std::uint32_t p) {
  std::vector<std::uint64_t> values;
  gap_values(base, steps, bounds, p, 0, 0, values);
  std::vector<bool> member(p, false);
  for (auto v : values) member[v] = true;
  return normalise(member);
}

}  // namespace chisum::oracle
