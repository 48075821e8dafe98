#include "chisum/field.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "chisum/error.hpp"

namespace chisum {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t mod_pow(std::uint32_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t b = base % p;
  while (exp > 0) {
    if (exp & 1) result = result * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t mod_inverse(std::uint32_t x, std::uint32_t p) {
  std::int64_t a = x % p, m = p, u = 1, v = 0;
  while (m != 0) {
    const std::int64_t q = a / m;
    a -= q * m;
    std::swap(a, m);
    u -= q * v;
    std::swap(u, v);
  }
  return reduce(u, p);
}

std::vector<std::uint32_t> inverse_table(std::uint32_t p) {
  std::vector<std::uint32_t> inv(p, 0);
  if (p > 1) inv[1] = 1;
  for (std::uint64_t i = 2; i < p; ++i) {
    // i^{-1} = -(p / i) * (p mod i)^{-1}
    inv[i] = static_cast<std::uint32_t>((p - (p / i) * inv[p % i] % p) % p);
  }
  return inv;
}

namespace {

std::uint32_t smallest_primitive_root(std::uint32_t p) {
  const auto factors = prime_factors(p - 1);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p = 2 only, which make_context rejects
}

// exp(2 pi i j / n) with exact values at multiples of n/4 and exact
// conjugate symmetry root[n-j] = conj(root[j]).
std::vector<std::complex<double>> unit_roots(std::uint32_t n) {
  std::vector<std::complex<double>> roots(n);
  for (std::uint32_t j = 0; j <= n / 2; ++j) {
    const std::uint64_t four_j = 4ull * j;
    std::complex<double> z;
    if (four_j % n == 0) {
      switch ((four_j / n) % 4) {
        case 0: z = {1.0, 0.0}; break;
        case 1: z = {0.0, 1.0}; break;
        case 2: z = {-1.0, 0.0}; break;
        default: z = {0.0, -1.0}; break;
      }
    } else {
      const long double angle = 2.0L * std::numbers::pi_v<long double> * j / n;
      z = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
    }
    roots[j] = z;
    if (j != 0) roots[n - j] = std::conj(z);
  }
  return roots;
}

}  // namespace

PrimeContext make_context(std::uint64_t p, std::uint32_t limit) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  if (p > limit) {
    throw Error(ErrorCode::TooLarge,
                "p = " + std::to_string(p) + " exceeds the context limit " + std::to_string(limit));
  }
  auto t = std::make_shared<PrimeContext::Tables>();
  const auto q = static_cast<std::uint32_t>(p);
  t->p = q;
  t->g = smallest_primitive_root(q);
  t->dlog.assign(q, 0);
  t->pow.assign(q - 1, 0);
  std::uint64_t x = 1;
  for (std::uint32_t k = 0; k + 1 < q; ++k) {
    t->pow[k] = static_cast<std::uint32_t>(x);
    t->dlog[x] = k;
    x = x * t->g % q;
  }
  t->inv = inverse_table(q);
  t->roots = unit_roots(q - 1);
  return PrimeContext(std::move(t));
}

Character::Character(PrimeContext ctx, std::uint32_t index) : ctx_(std::move(ctx)), index_(index) {
  const std::uint32_t n = ctx_.group_order();
  order_ = n / std::gcd(index_, n);
}

Character Character::conjugate() const {
  const std::uint32_t n = ctx_.group_order();
  return Character(ctx_, (n - index_) % n);
}

Character character(const PrimeContext& ctx, std::int64_t k) {
  if (k < 0 || k > static_cast<std::int64_t>(ctx.group_order()) - 1) {
    throw Error(ErrorCode::IndexOutOfRange,
                "character index " + std::to_string(k) + " outside [0, " +
                    std::to_string(ctx.group_order() - 1) + "]");
  }
  return Character(ctx, static_cast<std::uint32_t>(k));
}

Character legendre(const PrimeContext& ctx) { return Character(ctx, ctx.group_order() / 2); }

Character character_of_order(const PrimeContext& ctx, std::uint32_t d) {
  if (d == 0 || ctx.group_order() % d != 0) {
    throw Error(ErrorCode::IndexOutOfRange,
                "no character of order " + std::to_string(d) + " modulo " + std::to_string(ctx.modulus()));
  }
  return Character(ctx, (ctx.group_order() / d) % ctx.group_order());
}

void CharSumAccumulator::merge(const CharSumAccumulator& other) {
  for (std::size_t j = 0; j < buckets_.size(); ++j) buckets_[j] += other.buckets_[j];
}

std::complex<double> CharSumAccumulator::value() const {
  std::complex<double> sum{0.0, 0.0};
  const auto& ctx = chi_.context();
  for (std::size_t j = 0; j < buckets_.size(); ++j) {
    if (buckets_[j] != 0) sum += static_cast<double>(buckets_[j]) * ctx.root(j);
  }
  return sum;
}

}  // namespace chisum
