#include "qlat/arith.hpp"

#include <algorithm>
#include <cstdint>

#include "qlat/errors.hpp"

namespace qlat {

std::vector<Int> primes_up_to(Int n) {
  std::vector<Int> out;
  if (n < Int(2)) return out;
  std::int64_t m = n.to_i64();
  std::vector<bool> comp(static_cast<size_t>(m) + 1, false);
  for (std::int64_t p = 2; p <= m; ++p) {
    if (comp[static_cast<size_t>(p)]) continue;
    out.push_back(Int(p));
    for (std::int64_t q = p * p; q <= m; q += p) comp[static_cast<size_t>(q)] = true;
  }
  return out;
}

bool is_prime(Int n) {
  if (n < Int(2)) return false;
  if (n < Int(4)) return true;
  if (n.is_even()) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if ((n % d).is_zero()) return false;
  return true;
}

std::vector<std::pair<Int, int>> factor(Int n) {
  if (n <= Int(0)) throw input_error("factor: argument must be positive");
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; p == Int(2) ? p = 3 : p += 2) {
    if (!(n % p).is_zero()) continue;
    int e = 0;
    while ((n % p).is_zero()) { n /= p; ++e; }
    out.emplace_back(p, e);
  }
  if (n > Int(1)) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  for (auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

bool is_squarefree(Int n) {
  for (auto& [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

int omega(Int n) { return static_cast<int>(factor(n).size()); }

int valuation(Int n, Int p) {
  if (n.is_zero()) throw input_error("valuation: zero argument");
  int v = 0;
  while ((n % p).is_zero()) { n /= p; ++v; }
  return v;
}

namespace {

// Jacobi symbol (a|n) for odd n > 0.
int jacobi(Int a, Int n) {
  a = a % n;
  if (a.v < 0) a += n;
  int result = 1;
  while (!a.is_zero()) {
    while (a.is_even()) {
      a /= 2;
      std::int64_t m = (n % 8).to_i64();
      if (m == 3 || m == 5) result = -result;
    }
    std::swap(a, n);
    if ((a % 4) == Int(3) && (n % 4) == Int(3)) result = -result;
    a = a % n;
  }
  return n == Int(1) ? result : 0;
}

} // namespace

int kronecker(Int a, Int n) {
  if (n.is_zero()) return (abs(a) == Int(1)) ? 1 : 0;
  int s = 1;
  if (n.v < 0) {
    n = -n;
    if (a.v < 0) s = -s;
  }
  if (n.is_even()) {
    if (a.is_even()) return 0;
    while (n.is_even()) {
      n /= 2;
      std::int64_t m = ((a % 8) + 8).to_i64() % 8;
      if (m == 3 || m == 5) s = -s;
    }
  }
  return s * jacobi(a, n);
}

namespace {

// epsilon(u) = (u-1)/2 mod 2 for odd u.
int eps2(Int u) {
  std::int64_t m = ((u % 4) + 4).to_i64() % 4;
  return m == 3 ? 1 : 0;
}

// omega(u) = (u^2-1)/8 mod 2 for odd u.
int omega2(Int u) {
  std::int64_t m = ((u % 8) + 8).to_i64() % 8;
  return (m == 3 || m == 5) ? 1 : 0;
}

} // namespace

int hilbert_symbol(Int a, Int b, Int p) {
  if (a.is_zero() || b.is_zero()) throw input_error("hilbert_symbol: zero argument");
  if (!is_prime(p)) throw input_error("hilbert_symbol: p must be prime");
  int alpha = valuation(a, p), beta = valuation(b, p);
  Int u = a / pow_int(p, alpha), w = b / pow_int(p, beta);
  if (p != Int(2)) {
    int s = 1;
    if ((alpha & 1) && (beta & 1) && (p % 4) == Int(3)) s = -s;
    if (beta & 1) s *= kronecker(u, p);
    if (alpha & 1) s *= kronecker(w, p);
    return s;
  }
  int ex = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
  return (ex & 1) ? -1 : 1;
}

int hilbert_symbol_inf(Int a, Int b) { return (a.v < 0 && b.v < 0) ? -1 : 1; }

std::vector<Int> quaternion_ramification(Int a, Int b) {
  std::vector<Int> ram;
  for (Int p : prime_divisors(abs(Int(2) * a * b)))
    if (hilbert_symbol(a, b, p) == -1) ram.push_back(p);
  std::sort(ram.begin(), ram.end());
  return ram;
}

} // namespace qlat
