#include "chisum/lemma_counts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chisum/error.hpp"
#include "chisum/setops.hpp"

namespace chisum {

namespace {


void require_nonempty(const FpSet& s, const char* where) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, where);
}

void require_same(const FpSet& x, const FpSet& y, const char* where) {
  if (x.modulus() != y.modulus()) throw Error(ErrorCode::ModulusMismatch, where);
}

std::uint64_t narrow(u128 v, const char* where) {
  if (v > std::numeric_limits<std::uint64_t>::max()) throw Error(ErrorCode::TooLarge, std::string(where) + " overflow");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Spectrum f_spectrum(const FpSet& b, const FpSet& c) {
  require_same(b, c, "f_spectrum");
  require_nonempty(b, "f_spectrum needs nonempty B");
  require_nonempty(c, "f_spectrum needs nonempty C");
  const std::uint32_t p = b.modulus();
  const Spectrum rep = rep_spectrum(b, c, SetOp::Sum);
  const auto inv = inverse_table(p);
  std::vector<Element> divisors;
  rep.support().for_each([&](Element s) {
    if (s != 0) divisors.push_back(inv[s]);
  });
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint32_t v = 0; v < p; ++v) {
    const std::int64_t w = rep[v];
    if (w == 0) continue;
    for (auto si : divisors) counts[static_cast<std::uint64_t>(v) * si % p] += w;
  }
  return Spectrum(p, std::move(counts));
}

Spectrum g_spectrum(const FpSet& b, const FpSet& c) {
  require_same(b, c, "g_spectrum");
  require_nonempty(b, "g_spectrum needs nonempty B");
  require_nonempty(c, "g_spectrum needs nonempty C");
  const std::uint32_t p = b.modulus();
  const Spectrum rep = rep_spectrum(b, c, SetOp::Sum);
  const auto inv = inverse_table(p);
  std::vector<Element> support;
  rep.support().for_each([&](Element v) { support.push_back(v); });
  std::vector<std::int64_t> counts(p, 0);
  for (auto v : support) {
    for (auto w : support) {
      if (w == 0) continue;
      counts[static_cast<std::uint64_t>(v) * inv[w] % p] += rep[v] * rep[w];
    }
  }
  return Spectrum(p, std::move(counts));
}

Spectrum h_spectrum(const FpSet& a) {
  if (a.contains(0)) throw Error(ErrorCode::ZeroInSet, "h_spectrum requires 0 not in A");
  return rep_spectrum(a, a, SetOp::Quotient);
}

SystemCountReport system_count(const FpSet& a, const FpSet& b, const FpSet& c, CountMode mode,
                               std::uint64_t direct_cap) {
  require_same(a, b, "system_count");
  require_same(b, c, "system_count");
  require_nonempty(a, "system_count needs nonempty A");
  require_nonempty(b, "system_count needs nonempty B");
  require_nonempty(c, "system_count needs nonempty C");
  if (a.contains(0)) throw Error(ErrorCode::ZeroInSet, "system_count requires 0 not in A");
  const std::uint32_t p = a.modulus();

  SystemCountReport r;
  r.z = b.intersect(c.negated()).size();
  const Spectrum g = g_spectrum(b, c);
  const Spectrum h = h_spectrum(a);
  const u128 z2 = static_cast<u128>(r.z) * r.z;
  u128 spectral = 0, reconciliation = 0;
  for (std::uint32_t l = 0; l < p; ++l) {
    const u128 hl = static_cast<u128>(h[l]);
    if (hl == 0) continue;
    const u128 gl = static_cast<u128>(g[l]);
    spectral += gl * gl * hl;
    reconciliation += (gl + z2) * (gl + z2) * hl;
  }
  r.spectral = narrow(spectral, "system_count");
  r.reconciliation = narrow(reconciliation, "system_count");
  const u128 asz = a.size();
  r.trivial = narrow(asz * asz * z2 * z2, "system_count");

  if (mode == CountMode::SpectralOnly) {
    r.total = r.reconciliation;
  } else {
    const u128 work = asz * asz * b.size() * b.size() * c.size() * c.size();
    if (work > direct_cap) {
      throw Error(ErrorCode::WorkCapExceeded, "direct system count needs " + std::to_string(narrow(work, "work")) +
                                                  " steps, cap " + std::to_string(direct_cap));
    }
    // For fixed (a, a') both equations ask for the same thing,
    // (b + c) a' = (b' + c') a, so the count is N(a, a')^2.
    const auto as = a.elements();
    const auto bs = b.elements();
    const auto cs = c.elements();
    std::vector<Element> sums;
    for (auto x : bs)
      for (auto y : cs) sums.push_back(static_cast<Element>((static_cast<std::uint64_t>(x) + y) % p));
    u128 total = 0;
    for (auto x : as) {
      for (auto xp : as) {
        std::uint64_t n = 0;
        for (auto v : sums) {
          const std::uint64_t lhs = static_cast<std::uint64_t>(v) * xp % p;
          for (auto vp : sums) n += lhs == static_cast<std::uint64_t>(vp) * x % p;
        }
        total += static_cast<u128>(n) * n;
      }
    }
    r.total = narrow(total, "system_count");
    r.counted_directly = true;
  }
  r.nontrivial = r.total - r.trivial;
  return r;
}

SextupleReport sextuple_count(const FpSet& a, const FpSet& b, const FpSet& c) {
  require_same(a, b, "sextuple_count");
  require_same(b, c, "sextuple_count");
  require_nonempty(a, "sextuple_count needs nonempty A");
  require_nonempty(b, "sextuple_count needs nonempty B");
  require_nonempty(c, "sextuple_count needs nonempty C");
  const std::uint32_t p = a.modulus();
  const Spectrum rep = rep_spectrum(b, c, SetOp::Sum);
  std::vector<std::int64_t> q(p, 0);
  const auto as = a.elements();
  for (std::uint32_t v = 0; v < p; ++v) {
    const std::int64_t w = rep[v];
    if (w == 0) continue;
    for (auto x : as) q[static_cast<std::uint64_t>(x) * v % p] += w;
  }
  u128 count = 0;
  for (auto v : q) count += static_cast<u128>(v) * static_cast<u128>(v);

  SextupleReport r;
  r.count = narrow(count, "sextuple_count");
  const double prod = static_cast<double>(a.size()) * static_cast<double>(b.size()) * static_cast<double>(c.size());
  const double largest = static_cast<double>(std::max({a.size(), b.size(), c.size()}));
  r.bound = std::pow(prod, 1.5) + prod * largest;
  r.bound_ratio = static_cast<double>(r.count) / r.bound;
  return r;
}

IncidenceReport incidence_count(const FpSet& a, const FpSet& b, const FpSet& s, const FpSet& c) {
  require_same(a, b, "incidence_count");
  require_same(s, c, "incidence_count");
  require_same(a, s, "incidence_count");
  IncidenceReport r;
  r.points = static_cast<std::uint64_t>(a.size()) * b.size();
  r.lines = static_cast<std::uint64_t>(s.size()) * c.size();
  if (r.points == 0 || r.lines == 0) return r;
  const std::uint32_t p = a.modulus();
  const Spectrum rep = rep_spectrum(b, c, SetOp::Sum);
  const auto as = a.elements();
  s.for_each([&](Element slope) {
    for (auto x : as) r.incidences += static_cast<std::uint64_t>(rep[static_cast<std::uint64_t>(slope) * x % p]);
  });
  const double n = static_cast<double>(r.points);
  const double m = static_cast<double>(r.lines);
  r.bound = std::pow(n, 0.75) * std::pow(m, 2.0 / 3.0) + m + n;
  r.bound_ratio = static_cast<double>(r.incidences) / r.bound;
  return r;
}

FpSet level_set(const Spectrum& spectrum, double tau, const std::optional<FpSet>& restrict) {
  const std::uint32_t p = spectrum.modulus();
  if (restrict && restrict->modulus() != p) throw Error(ErrorCode::ModulusMismatch, "level_set");
  std::vector<Element> out;
  for (std::uint32_t l = 0; l < p; ++l) {
    if (static_cast<double>(spectrum[l]) >= tau && (!restrict || restrict->contains(l))) out.push_back(l);
  }
  return FpSet::from_elements(p, std::span<const Element>(out));
}

EnergyEsteem energy_esteem(const FpSet& a) {
  EnergyEsteem e;
  e.energy = multiplicative_energy(a);
  e.doubling = doubling_constant(a);
  const double n = static_cast<double>(a.size());
  e.bound = std::pow(e.doubling, 1.5) * std::pow(n, 2.5);
  e.ratio = static_cast<double>(e.energy) / e.bound;
  return e;
}

}  // namespace chisum
