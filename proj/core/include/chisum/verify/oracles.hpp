#pragma once

/**
 * @file oracles.hpp
 * @brief Brute-force reference implementations.
 *
 * Nothing here calls into the library kernels: sets are plain sorted
 * vectors, characters come from their own primitive-root search and
 * polar-form evaluation, and every count is a literal nested loop. The
 * suites and tests compare the fast paths against these.
 */

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace chisum::oracle {

using Elems = std::vector<std::uint32_t>;

/// Smallest primitive root, found by computing element orders directly.
std::uint32_t primitive_root(std::uint32_t p);

/// chi_k(x) = exp(2 pi i k log_g(x) / (p - 1)) with g the smallest primitive root.
class BruteCharacter {
 public:
  BruteCharacter(std::uint32_t p, std::uint32_t index);
  std::complex<double> operator()(std::uint64_t x) const;
  std::uint32_t modulus() const { return p_; }

 private:
  std::uint32_t p_;
  std::uint32_t index_;
  std::vector<std::uint32_t> log_;
};

enum class Op { Sum, Difference, Product, Quotient };

Elems combine(const Elems& a, const Elems& b, Op op, std::uint32_t p);

std::uint64_t additive_energy(const Elems& a, std::uint32_t p);
std::uint64_t multiplicative_energy(const Elems& a, std::uint32_t p);

/// The ten-variable count, one loop per variable (a, a' nonzero).
std::uint64_t system_count(const Elems& a, const Elems& b, const Elems& c, std::uint32_t p);

/// #{a1 (b1 + c1) = a2 (b2 + c2)}, six nested loops.
std::uint64_t sextuple_count(const Elems& a, const Elems& b, const Elems& c, std::uint32_t p);

/// #{(a, b, s, c) : s a = b + c}, four nested loops.
std::uint64_t incidence_count(const Elems& a, const Elems& b, const Elems& s, const Elems& c, std::uint32_t p);

/// f, g, h ratio spectra by literal enumeration.
std::vector<std::int64_t> f_spectrum(const Elems& b, const Elems& c, std::uint32_t p);
std::vector<std::int64_t> g_spectrum(const Elems& b, const Elems& c, std::uint32_t p);
std::vector<std::int64_t> h_spectrum(const Elems& a, std::uint32_t p);

std::complex<double> binary_sum(const Elems& a, const Elems& b, const BruteCharacter& chi);
std::complex<double> ternary_sum(const Elems& a, const Elems& b, const Elems& c, const BruteCharacter& chi);

/// sum_x chi(prod (x + t_i)^{e_i}), the product formed with modular powers.
std::complex<double> weil_sum(const BruteCharacter& chi, const std::vector<std::pair<std::uint32_t, std::uint64_t>>& factors);

/// sum_{u1,u2} |sum_{t in I} chi(u1 + t) conj chi(u2 + t)|^{2r}
double davenport_moment(const BruteCharacter& chi, const Elems& interval, unsigned r);

/// Size of a largest clique of the Paley graph by exhaustive clique enumeration.
std::uint32_t paley_clique(std::uint32_t p);

/// True iff every element of `clique` is pairwise joined in the Paley graph.
bool is_paley_clique(const Elems& clique, std::uint32_t p);

/// (f * 1_A)(x) = sum_{a in A} f(x - a), by direct summation.
std::vector<std::int64_t> convolve_indicator(const std::vector<std::int64_t>& f, const Elems& a, std::uint32_t p);

/// sum_x |g(x + t) - g(x)|^2, exact.
std::uint64_t shift_square_deviation(const std::vector<std::int64_t>& g, std::uint32_t t, std::uint32_t p);

/// sum_x |g(x + t) - g(x)|
std::uint64_t shift_l1_deviation(const std::vector<std::int64_t>& g, std::uint32_t t, std::uint32_t p);

/// Number of coinciding pairs among the generated sums of a GAP (0 iff proper).
std::uint64_t gap_collisions(std::int64_t base, const std::vector<std::int64_t>& steps,
                             const std::vector<std::uint64_t>& bounds, std::uint32_t p);

/// The set generated by a GAP, by nested enumeration.
Elems gap_elements(std::int64_t base, const std::vector<std::int64_t>& steps, const std::vector<std::uint64_t>& bounds,
                   std::uint32_t p);

}  // namespace chisum::oracle
