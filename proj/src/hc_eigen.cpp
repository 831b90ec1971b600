#include "pfrad/hc_eigen.hpp"

#include <cstdlib>
#include <stdexcept>

#include "pfrad/enveloping.hpp"

namespace pfrad {

bool Weight::is_dominant() const {
  int k = N / 2;
  if (static_cast<int>(entries.size()) != k) return false;
  for (int l = 0; l + 1 < k; ++l)
    if (entries[l] < entries[l + 1]) return false;
  if (k == 0) return true;
  if (N % 2 == 1) return entries[k - 1] >= 0;
  if (k >= 2) return entries[k - 2] >= std::labs(entries[k - 1]);
  return true;  // N = 2 would be degenerate; N >= 3 in practice
}

long Weight::degree() const {
  long d = 0;
  for (long e : entries) d += std::labs(e);
  return d;
}

PairParams::PairParams(int m_, int n_, int r1_, int r2_) : m(m_), n(n_), r1(r1_), r2(r2_) {
  if (n < 1 || r1 < 0 || r2 < 0 || m - n < r1 || m - n < r2 || r1 == r2)
    throw std::domain_error("PairParams: need n >= 1, m-n >= r1,r2 >= 0, r1 != r2");
}

namespace {

void require_dominant(int N, const Weight& lambda) {
  if (lambda.N != N || !lambda.is_dominant())
    throw std::domain_error("weight is not dominant for so(N)");
}

}  // namespace

mpq_class d_one(int N, const Weight& lambda) {
  require_dominant(N, lambda);
  mpq_class sum = 0;
  for (int l = 1; l <= N / 2; ++l) {
    mpq_class x(lambda.entries[l - 1]);
    sum += x * (x + (N - 2 * l));
  }
  return -sum;
}

namespace {

// Recursive evaluation of the central character of W(r): peel off the first
// remaining coordinate, either picking up its quadratic factor (rank drops)
// or skipping it (ambient block shrinks by 2 either way). The flattened
// double-sum display in the source material misstates the inner constants for
// non-leading indices; this recursion is the identity the straightening
// engine verifies exactly.
mpq_class d_rec(const std::vector<long>& entries, std::size_t i, int block, int r) {
  if (r == 0) return 1;
  if (2 * r > block) return 0;
  if (r == 1) {
    mpq_class sum = 0;
    for (int l = 1; 2 * l <= block; ++l) {
      mpq_class x(entries[i + l - 1]);
      sum += x * (x + (block - 2 * l));
    }
    return -sum;
  }
  mpq_class x(entries[i]);
  mpq_class take = -(x + (r - 1)) * (x + (block - r - 1)) * d_rec(entries, i + 1, block - 2, r - 1);
  mpq_class skip = d_rec(entries, i + 1, block - 2, r);
  return take + skip;
}

}  // namespace

mpq_class d_general(int N, int r, const Weight& lambda) {
  require_dominant(N, lambda);
  if (r < 2 || 2 * r > N) throw std::domain_error("d_general: need 2 <= r, 2r <= N");
  return d_rec(lambda.entries, 0, N, r);
}

bool d_is_zero(int N, int r, const Weight& lambda) {
  if (r < 1 || 2 * r > N) throw std::domain_error("d_is_zero: need 1 <= r, 2r <= N");
  if (r == 1) {
    for (long e : lambda.entries)
      if (e != 0) return false;
    return true;
  }
  for (int l = r; l <= N / 2; ++l)
    if (lambda.entries[l - 1] != 0) return false;
  return true;
}

bool has_fixed_vector(int N, int k, const Weight& lambda) {
  if (k < 1 || k >= N) throw std::domain_error("has_fixed_vector: need 1 <= k < N");
  for (long e : lambda.entries)
    if (e % 2 != 0) return false;
  int cut = std::min(k, N - k) + 1;
  for (int l = cut; l <= N / 2; ++l)
    if (lambda.entries[l - 1] != 0) return false;
  return true;
}

mpq_class p_poly(const PairParams& params, int p, int k, const std::vector<mpq_class>& lambda) {
  int n = params.n;
  if (k < 0 || k > n) throw std::domain_error("p_poly: k out of range");
  if (static_cast<int>(lambda.size()) != n) throw std::invalid_argument("p_poly: lambda size");
  if (k == 0) return 1;
  int N = params.m + params.n;
  mpq_class total = 0;
  for (const auto& J : increasing_sequences(k, 1, n)) {
    mpq_class prod = 1;
    for (int l = 1; l <= k; ++l) {
      int jl = J[l - 1];
      prod *= (-lambda[jl - 1] + (p + 2 - jl)) * (lambda[jl - 1] + (N - 4 - p + jl));
    }
    total += prod;
  }
  return total;
}

mpq_class p_squared(const PairParams& params, int p, const std::vector<mpq_class>& lambda) {
  int n = params.n;
  if (static_cast<int>(lambda.size()) != n) throw std::invalid_argument("p_squared: lambda size");
  mpq_class prod = 1;
  for (int l = 1; l <= n; ++l) {
    mpq_class f = -lambda[l - 1] + (p + 2 - l);
    prod *= f * f;
  }
  return prod;
}

mpq_class q_tau(const PairParams& params, int p, const std::vector<mpq_class>& lambda,
                const std::vector<mpq_class>& dvals) {
  if (static_cast<int>(dvals.size()) != params.n + 1)
    throw std::invalid_argument("q_tau: dvals must have length n+1");
  mpq_class total = 0;
  for (int k = 0; k <= params.n; ++k) total += p_poly(params, p, k, lambda) * dvals[k];
  return total;
}

bool annihilation_bound_check(int N, int k, const Weight& lambda) {
  if (!has_fixed_vector(N, k, lambda))
    throw std::domain_error("annihilation_bound_check: no fixed vector");
  int r = std::min(k, N - k) + 1;
  if (2 * r > N) throw std::domain_error("annihilation_bound_check: operator does not exist");
  return d_is_zero(N, r, lambda);
}

namespace {

void enumerate_rec(int N, int slots, long remaining, long cap, std::vector<long>& cur,
                   std::vector<Weight>& out) {
  if (static_cast<int>(cur.size()) == slots) {
    out.push_back(Weight{N, cur});
    if (N % 2 == 0 && slots >= 1 && cur.back() > 0) {
      Weight mirrored{N, cur};
      mirrored.entries.back() = -mirrored.entries.back();
      out.push_back(std::move(mirrored));
    }
    return;
  }
  for (long v = 0; v <= std::min(remaining, cap); ++v) {
    cur.push_back(v);
    enumerate_rec(N, slots, remaining - v, v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Weight> dominant_weights(int N, long max_sum) {
  std::vector<Weight> out;
  std::vector<long> cur;
  enumerate_rec(N, N / 2, max_sum, max_sum, cur, out);
  return out;
}

}  // namespace pfrad
