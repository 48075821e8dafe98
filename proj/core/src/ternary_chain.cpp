#include "chisum/ternary_chain.hpp"

#include <cmath>
#include <complex>

#include "chisum/charsums.hpp"
#include "chisum/error.hpp"
#include "chisum/lemma_counts.hpp"
#include "chisum/parallel.hpp"
#include "chisum/setops.hpp"

namespace chisum {

TernaryChainReport ternary_chain(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& dilations,
                                 const FpSet& interval, const Character& chi, const TernaryChainOptions& options) {
  if (chi.is_trivial()) throw Error(ErrorCode::TrivialCharacter, "ternary_chain");
  for (const FpSet* s : {&a, &b, &c, &dilations, &interval}) {
    if (s->modulus() != chi.modulus()) throw Error(ErrorCode::ModulusMismatch, "ternary_chain");
    if (s->empty()) throw Error(ErrorCode::EmptySet, "ternary_chain needs nonempty sets");
  }
  if (dilations.contains(0)) throw Error(ErrorCode::ZeroInSet, "ternary_chain needs 0 not in A0");
  if (options.r < 1) throw Error(ErrorCode::BadExponent, "ternary_chain needs r >= 1");

  const std::uint32_t p = chi.modulus();
  TernaryChainReport report;
  report.r = options.r;
  report.ternary_abs = std::abs(ternary_sum(a, b, c, chi));

  const Spectrum rep_bc = rep_spectrum(b, c, SetOp::Sum);
  // H(w) = sum_{b,c} chi(b + c + w)
  std::vector<std::complex<double>> inner(p);
  for (std::uint32_t w = 0; w < p; ++w) {
    CharSumAccumulator acc(chi);
    for (std::uint32_t v = 0; v < p; ++v) {
      if (rep_bc[v] != 0) acc.add(static_cast<Element>((static_cast<std::uint64_t>(v) + w) % p), rep_bc[v]);
    }
    inner[w] = acc.value();
  }

  std::vector<Element> products;  // xy over A0 x I, with multiplicity
  const auto xs = dilations.elements();
  const auto ys = interval.elements();
  for (auto x : xs)
    for (auto y : ys) products.push_back(static_cast<Element>(static_cast<std::uint64_t>(x) * y % p));
  const double pairs = static_cast<double>(products.size());

  const auto shifts = difference_set(a, product_set(dilations, interval)).elements();
  report.shift_count = shifts.size();
  long double averaged = 0.0L;
  for (auto s : shifts)
    for (auto z : products) averaged += std::abs(inner[(s + static_cast<std::uint64_t>(z)) % p]);
  report.averaged_bound = static_cast<double>(averaged / pairs);
  report.averaging_holds = report.ternary_abs <= report.averaged_bound * (1.0 + 1e-12) + 1e-9;

  report.moment = davenport_moment(chi, interval, options.r, MomentStrategy::Direct, {}, options.threads);
  report.moment_bound = davenport_bound(p, interval.size(), options.r);

  // W(u1, u2) = sum_{y in I} chi(u1 + y) conj(chi(u2 + y))
  std::vector<std::complex<double>> weight(static_cast<std::size_t>(p) * p);
  {
    std::vector<std::complex<double>> table(static_cast<std::size_t>(p) * ys.size());
    for (std::uint32_t u = 0; u < p; ++u)
      for (std::size_t j = 0; j < ys.size(); ++j) table[u * ys.size() + j] = chi(static_cast<Element>((u + ys[j]) % p));
    for (std::uint32_t u1 = 0; u1 < p; ++u1) {
      for (std::uint32_t u2 = 0; u2 < p; ++u2) {
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t j = 0; j < ys.size(); ++j) sum += table[u1 * ys.size() + j] * std::conj(table[u2 * ys.size() + j]);
        weight[static_cast<std::size_t>(u1) * p + u2] = sum;
      }
    }
  }

  const std::size_t rows = std::min(options.max_rows, shifts.size());
  report.rows.resize(rows);
  const std::uint64_t expected_mass =
      static_cast<std::uint64_t>(b.size()) * b.size() * c.size() * c.size() * dilations.size();
  const double r = options.r;
  parallel_for(rows, options.threads, [&](std::size_t i) {
    ShiftRow row;
    row.shift = shifts[i];
    for (auto z : products) {
      const auto& h = inner[(row.shift + static_cast<std::uint64_t>(z)) % p];
      row.l1_mass += std::abs(h);
      row.correlation += std::norm(h);
    }
    row.cs_rhs = pairs * row.correlation;
    row.cs_holds = row.l1_mass * row.l1_mass <= row.cs_rhs * (1.0 + 1e-12);

    // r_a(v) = #{(b, c) in B_a x C : b + c = v} = rep_bc(v - a)
    std::vector<std::int64_t> rep_a(p);
    for (std::uint32_t v = 0; v < p; ++v) rep_a[v] = rep_bc[(v + p - row.shift) % p];
    std::vector<std::int64_t> nu(static_cast<std::size_t>(p) * p, 0);
    std::vector<Element> support;
    for (std::uint32_t v = 0; v < p; ++v)
      if (rep_a[v] != 0) support.push_back(v);
    for (auto x : xs) {
      const Element xinv = chi.context().inverse(x);
      for (auto v1 : support) {
        const std::size_t u1 = static_cast<std::uint64_t>(v1) * xinv % p;
        for (auto v2 : support) {
          const std::size_t u2 = static_cast<std::uint64_t>(v2) * xinv % p;
          nu[u1 * p + u2] += rep_a[v1] * rep_a[v2];
        }
      }
    }
    std::complex<long double> route{0.0L, 0.0L};
    for (std::size_t k = 0; k < nu.size(); ++k) {
      if (nu[k] == 0) continue;
      row.nu_mass += static_cast<std::uint64_t>(nu[k]);
      row.nu_energy += static_cast<std::uint64_t>(nu[k] * nu[k]);
      route += std::complex<long double>(static_cast<long double>(nu[k]) * weight[k].real(),
                                         static_cast<long double>(nu[k]) * weight[k].imag());
    }
    row.nu_route = static_cast<double>(route.real());
    row.nu_route_imag = static_cast<double>(route.imag());
    const double scale = static_cast<double>(row.nu_mass) * static_cast<double>(ys.size());
    row.nu_identity_holds = std::abs(std::complex<double>(row.nu_route, row.nu_route_imag) - row.correlation) <=
                            1e-9 * std::max(1.0, scale);
    row.nu_mass_holds = row.nu_mass == expected_mass;
    row.system_total = system_count(dilations, b.translated(row.shift), c, CountMode::SpectralOnly).total;
    row.energy_matches_system = row.nu_energy == row.system_total;
    row.holder_rhs = std::pow(static_cast<double>(row.nu_mass), 1.0 - 1.0 / r) *
                     std::pow(static_cast<double>(row.nu_energy), 1.0 / (2.0 * r)) *
                     std::pow(report.moment, 1.0 / (2.0 * r));
    row.holder_holds = std::abs(std::complex<double>(row.nu_route, row.nu_route_imag)) <=
                       row.holder_rhs * (1.0 + 1e-12) + 1e-9;
    report.rows[i] = row;
  });

  report.all_hold = report.averaging_holds && report.moment < report.moment_bound;
  for (const auto& row : report.rows) {
    report.all_hold = report.all_hold && row.cs_holds && row.nu_identity_holds && row.nu_mass_holds &&
                      row.energy_matches_system && row.holder_holds;
  }
  return report;
}

}  // namespace chisum
