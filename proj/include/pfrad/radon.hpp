#ifndef PFRAD_RADON_HPP
#define PFRAD_RADON_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <random>

#include "pfrad/repmod.hpp"

namespace pfrad {

/// Compact Grassmannian pair SO(N)/H_k1 <- SO(N)/(H_k1 cap H_k2) -> SO(N)/H_k2.
struct GrassmannPair {
  int N = 0, k1 = 0, k2 = 0;

  GrassmannPair(int N_, int k1_, int k2_);
  int r() const { return std::min(k1, N - k1); }
  int rp() const { return std::min(k2, N - k2); }
};

enum class Side { Source, Target };

/// Scalar state of a spectral component: q * conj(C)^cbar * C^c with exact q.
/// Powers of the transform multiplier are kept symbolic so that
/// forward-then-plus composes to exactly 1.
struct Multiplier {
  GaussianRational q{1};
  int cbar = 0;
  int c = 0;
};

struct SpectralComponent {
  std::vector<GaussianRational> coeffs;  // coordinates in the irrep basis
  Multiplier mult;
};

/// Finite Peter-Weyl expansion f(u) = sum_l dim(V_l) * s_l *
/// <pi_l(u) v_side, w_l> over weights admissible for the side's subgroup.
struct SpectralFunction {
  GrassmannPair pair;
  Side side;
  std::map<std::vector<long>, SpectralComponent> components;

  SpectralFunction(const GrassmannPair& p, Side s) : pair(p), side(s) {}
  bool is_zero() const { return components.empty(); }
};

struct CatalogEntry {
  Weight weight;
  bool in_source = false, in_target = false;
  int dim = 0;
  std::optional<mpq_class> c_sq;           // |C(tau)|^2 when both sides admit
  std::optional<mpq_class> range_mult;     // D_{r+1}(lambda) when the operator exists
  mpq_class d_one_val;
};

struct OracleStats {
  double mae = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

/// Spectral Radon engine for one Grassmannian pair: catalog, the diagonal
/// transform operators, and the direct-integration oracle.
class RadonEngine {
 public:
  RadonEngine(GrassmannPair pair, long max_degree);

  const GrassmannPair& pair() const { return pair_; }
  const std::vector<CatalogEntry>& catalog() const { return catalog_; }

  bool weight_in(Side side, const std::vector<long>& w) const;
  int weight_dim(const std::vector<long>& w) const;
  std::optional<mpq_class> c_squared(const std::vector<long>& w) const;

  SpectralFunction zero(Side side) const { return SpectralFunction(pair_, side); }
  SpectralFunction constant(Side side, const GaussianRational& value) const;

  /// Builds a function with given exact coefficient vectors per weight.
  SpectralFunction make_function(
      Side side, const std::map<std::vector<long>, std::vector<GaussianRational>>& comps) const;

  /// Seeded small-integer coefficients on the given weights.
  SpectralFunction random_function(Side side, const std::vector<std::vector<long>>& weights,
                                   std::uint64_t seed) const;

  SpectralFunction radon_forward(const SpectralFunction& f) const;
  SpectralFunction radon_dual(const SpectralFunction& g) const;
  SpectralFunction radon_plus(const SpectralFunction& g) const;

  /// Residual against the range characterization: each component scaled by
  /// D_{r+1}; the norm is zero exactly on the image of radon_forward.
  std::pair<SpectralFunction, mpq_class> range_residual(const SpectralFunction& g) const;

  /// Exact componentwise equality after canonicalizing multipliers.
  bool equal(const SpectralFunction& a, const SpectralFunction& b) const;

  /// Squared L2 norm over SO(N) (Schur orthogonality), exact.
  mpq_class norm_sq(const SpectralFunction& f) const;

  std::complex<double> evaluate(const SpectralFunction& f,
                                const std::vector<std::vector<double>>& u) const;

  /// Monte-Carlo average of f over u * Haar(S(O(N-k2) x O(k2))); deterministic
  /// for a fixed seed.
  std::complex<double> direct_forward_oracle(const SpectralFunction& f,
                                             const std::vector<std::vector<double>>& u,
                                             long samples, std::uint64_t seed) const;

  /// Haar-random element of SO(N) (for evaluation points).
  std::vector<std::vector<double>> random_rotation(std::mt19937_64& rng) const;

 private:
  struct WeightData {
    std::shared_ptr<const Irrep> irrep;
    bool in_src = false, in_tgt = false;
    SparseVec u_src, u_tgt;  // highest-vector projections onto the fixed lines
    mpq_class n_src = 0, n_tgt = 0;
    GaussianRational inner_ts;  // <u_tgt, u_src>
    std::optional<Mat> gram;    // basis Gram matrix, filled lazily
  };

  GrassmannPair pair_;
  long max_degree_;
  std::map<std::vector<long>, WeightData> data_;
  std::vector<CatalogEntry> catalog_;

  const WeightData& at(const std::vector<long>& w) const;
  const Mat& gram(const std::vector<long>& w) const;
  mpq_class c_sq_value(const WeightData& d) const;
  void canonicalize(Multiplier& m, const WeightData& d) const;
  mpq_class mult_norm_sq(const Multiplier& m, const WeightData& d) const;
  std::complex<double> mult_value(const Multiplier& m, const WeightData& d) const;
  const SparseVec& side_vector(const WeightData& d, Side side) const;
  mpq_class side_norm_sq(const WeightData& d, Side side) const;
  mutable std::mutex gram_mutex_;
};

/// Haar-distributed orthogonal matrix via Gram-Schmidt of Gaussians.
std::vector<std::vector<double>> haar_orthogonal(int k, std::mt19937_64& rng);

/// Haar on S(O(N-k) x O(k)): independent block Haar with the determinant
/// product fixed to +1 by flipping one column of the first block.
std::vector<std::vector<double>> haar_block_pair(int N, int k, std::mt19937_64& rng);

}  // namespace pfrad

#endif
