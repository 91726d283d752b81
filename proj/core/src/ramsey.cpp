#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "metrik/error.hpp"
#include "metrik/sra.hpp"

namespace metrik {
namespace {

struct KnownRamsey {
  int a;
  int b;
  int value;
};

// Exactly known two-colour Ramsey numbers with 3 <= a <= b (R(2, b) = b is
// handled separately).
constexpr std::array<KnownRamsey, 9> kKnown{{
    {3, 3, 6},
    {3, 4, 9},
    {3, 5, 14},
    {3, 6, 18},
    {3, 7, 23},
    {3, 8, 28},
    {3, 9, 36},
    {4, 4, 18},
    {4, 5, 25},
}};

// Chain values are refused once they exceed this many bits.
constexpr unsigned kMaxChainBits = 1u << 20;

BigInt binomial(const BigInt& n, unsigned long k) {
  BigInt result = 1;
  for (unsigned long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace

RamseyValue ramsey_upper_bound(const BigInt& a, const BigInt& b) {
  if (a < 2 || b < 2) throw ParameterError("Ramsey arguments must be at least 2");
  const BigInt& lo = a < b ? a : b;
  const BigInt& hi = a < b ? b : a;
  if (lo == 2) return {hi, true};
  for (const KnownRamsey& k : kKnown) {
    if (lo == k.a && hi == k.b) return {BigInt(k.value), true};
  }
  // Erdos-Szekeres: R(a, b) <= C(a + b - 2, a - 1) = C(a + b - 2, min - 1).
  if (lo - 1 > BigInt(1'000'000)) {
    throw CapacityExceeded("binomial Ramsey bound needs min(a, b) <= 1000001");
  }
  const auto k = static_cast<unsigned long>(lo - 1);
  return {binomial(a + b - 2, k), false};
}

bool RamseyCertificate::exact() const {
  return std::all_of(chain.begin(), chain.end(), [](const ChainEntry& e) { return e.exact; });
}

RamseyCertificate compute_sra_free_bound(int L) {
  if (L < 2) throw ParameterError("L must be at least 2");
  RamseyCertificate cert;
  cert.L = L;
  RamseyValue h = ramsey_upper_bound(2, L);
  cert.chain.push_back({L, h.value, h.exact});
  bool exact_so_far = h.exact;
  for (int i = L; i > 2; --i) {
    // C(n, L - 1) <= n^(L - 1): refuse before the multiplication gets expensive.
    const auto bits_in = static_cast<unsigned long>(boost::multiprecision::msb(h.value + 1)) + 1;
    if (bits_in * static_cast<unsigned long>(L - 1) > kMaxChainBits) {
      throw CapacityExceeded("Ramsey chain exceeds " + std::to_string(kMaxChainBits) +
                             " bits at index " + std::to_string(i - 1));
    }
    RamseyValue next = ramsey_upper_bound(h.value + 1, L);
    // A bound on H_i only bounds H_{i-1}, even if R(H_i + 1, L) is tabulated.
    exact_so_far = exact_so_far && next.exact;
    next.exact = exact_so_far;
    if (boost::multiprecision::msb(next.value) > kMaxChainBits) {
      throw CapacityExceeded("Ramsey chain exceeds " + std::to_string(kMaxChainBits) +
                             " bits at index " + std::to_string(i - 1));
    }
    cert.chain.push_back({i - 1, next.value, next.exact});
    h = next;
  }
  cert.N = cert.chain.back().value + 1;
  return cert;
}

DoublingThreshold doubling_threshold(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("doubling threshold needs alpha in (0, 1]");
  }
  long n = static_cast<long>(std::ceil(3.0 / alpha)) + 2;
  while (alpha * static_cast<double>(n - 3) >= 3.0) --n;
  while (alpha * static_cast<double>(n - 2) < 3.0) ++n;
  return {alpha, n};
}

}  // namespace metrik
