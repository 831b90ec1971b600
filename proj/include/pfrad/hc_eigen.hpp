#ifndef PFRAD_HC_EIGEN_HPP
#define PFRAD_HC_EIGEN_HPP

#include <vector>

#include "pfrad/gaussian.hpp"

namespace pfrad {

/// Dominant integral highest weight (lambda_1, ..., lambda_{N/2}).
/// For even N the last entry may be negative (|lambda_last| bounded by the
/// previous entry).
struct Weight {
  int N = 0;
  std::vector<long> entries;

  bool is_dominant() const;
  long degree() const;  // sum of |entries|
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

/// Parameters of a horocycle pair: so(m,n) with subgroup parameters r1, r2.
struct PairParams {
  int m = 0, n = 0, r1 = 0, r2 = 0;

  PairParams(int m_, int n_, int r1_, int r2_);
  int r1_tilde() const { return std::min(m - r1, r1 + n); }
  int r2_tilde() const { return std::min(m - r2, r2 + n); }
};

/// Central character of W(1) at highest weight lambda:
/// -sum_l lambda_l (lambda_l + N - 2l).
mpq_class d_one(int N, const Weight& lambda);

/// Central character of W(r), r >= 2, via the closed double-sum/product form.
mpq_class d_general(int N, int r, const Weight& lambda);

/// Closed-form predicate for D_r^N(lambda) = 0.
bool d_is_zero(int N, int r, const Weight& lambda);

/// Existence of a nonzero H_k-fixed vector in V_lambda: all entries even and
/// zero from position min(k, N-k)+1 on.
bool has_fixed_vector(int N, int k, const Weight& lambda);

/// P_k(lambda), the degree-2k symmetric coefficient polynomials; P_0 = 1.
mpq_class p_poly(const PairParams& params, int p, int k, const std::vector<mpq_class>& lambda);

/// P(lambda) = prod_l (-lambda_l + p+2-l)^2; nonzero exactly on the generic set.
mpq_class p_squared(const PairParams& params, int p, const std::vector<mpq_class>& lambda);

/// Q(lambda) = sum_k P_k(lambda) * dvals[k], dvals[k] = D_{r1~+1-k}(tau).
mpq_class q_tau(const PairParams& params, int p, const std::vector<mpq_class>& lambda,
                const std::vector<mpq_class>& dvals);

/// Compact annihilation check: under the branching hypothesis the central
/// character D_{min(k,N-k)+1} must vanish.
bool annihilation_bound_check(int N, int k, const Weight& lambda);

/// All dominant weights with degree <= max_sum; for even N both signs of the
/// last entry are enumerated.
std::vector<Weight> dominant_weights(int N, long max_sum);

}  // namespace pfrad

#endif
