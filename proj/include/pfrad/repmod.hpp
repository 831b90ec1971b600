#ifndef PFRAD_REPMOD_HPP
#define PFRAD_REPMOD_HPP

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "pfrad/enveloping.hpp"
#include "pfrad/hc_eigen.hpp"

namespace pfrad {

/// Ambient tensor coordinates in the weight basis of (C^N)^{tensor d},
/// keyed by the base-N encoding of the factor-index tuple.
using SparseVec = std::map<unsigned int, GaussianRational>;

struct FixedVectorData {
  int k = 0;
  std::vector<std::vector<GaussianRational>> basis;  // coords in the irrep basis
  std::vector<mpq_class> norms_sq;
  int dim() const { return static_cast<int>(basis.size()); }
};

/// Exact irreducible so(N)-representation with highest weight lambda,
/// realized inside the degree-d tensor power of the defining representation
/// (d = sum of |lambda_l|). All arithmetic is over Gaussian rationals.
class Irrep {
 public:
  static std::shared_ptr<const Irrep> build(int N, const Weight& lambda);

  int N() const { return N_; }
  const Weight& lambda() const { return lambda_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int tensor_degree() const { return degree_; }

  const std::vector<SparseVec>& basis_vectors() const { return basis_; }
  const SparseVec& highest_vector() const { return highest_; }

  /// Derivation action of a Lie algebra element on an ambient vector.
  SparseVec apply_lie(const LieElement& x, const SparseVec& v) const;

  /// Action of a PBW element, monomials evaluated right-to-left with shared
  /// suffixes.
  SparseVec apply_element(const UElement& x, const SparseVec& v) const;

  /// Multiplicative action of an exact orthogonal matrix (standard basis).
  SparseVec apply_group(const Mat& g_std, const SparseVec& v) const;

  /// Coordinates in the irrep basis; throws if v is outside the span.
  std::vector<GaussianRational> coords(const SparseVec& v) const;
  SparseVec from_coords(const std::vector<GaussianRational>& c) const;

  /// Invariant Hermitian pairing, linear in the first argument.
  GaussianRational inner(const SparseVec& a, const SparseVec& b) const;

  /// Exact dim x dim matrix of the generator X(i,j); cached.
  Mat generator_matrix(int i, int j) const;

  /// Dense standard-basis complex coordinates (for float evaluation).
  std::vector<std::complex<double>> to_std_complex(const SparseVec& v) const;

  /// Float tensor action of a numerically orthogonal u on std coordinates.
  std::vector<std::complex<double>> apply_group_std(
      const std::vector<std::vector<double>>& u,
      const std::vector<std::complex<double>>& v) const;

 private:
  friend std::shared_ptr<const Irrep> build_irrep(int N, const Weight& lambda);
  Irrep() = default;

  int N_ = 0;
  int degree_ = 0;
  bool mirrored_ = false;  // negative last entry handled by coordinate swap
  Weight lambda_;
  std::vector<SparseVec> basis_;
  SparseVec highest_;
  // per weight space: reduced rows with expressions in the original basis
  struct Tracker {
    std::map<unsigned int, int> pivot_to_row;
    std::vector<SparseVec> rows;
    std::vector<std::map<int, GaussianRational>> combos;
  };
  std::map<std::vector<long>, Tracker> trackers_;
  std::vector<std::vector<long>> factor_weights_;  // per weight-basis column
  std::vector<Mat> gen_table_;                     // weight-basis generators by pair rank
  Mat p_, p_inv_;                                  // std <-> weight basis change
  std::vector<long> weight_of(unsigned int idx) const;
  int mirror_index(int i) const;

  mutable std::map<std::pair<int, int>, Mat> gen_cache_;
  mutable std::mutex cache_mutex_;
};

/// Cached construction keyed by (N, lambda).
std::shared_ptr<const Irrep> build_irrep(int N, const Weight& lambda);

/// Matrix of the element in the irrep basis.
Mat act(const UElement& x, const Irrep& rho);

/// Scalar by which a central element acts; the flag records whether the
/// matrix really is scalar.
std::pair<GaussianRational, bool> central_scalar(const UElement& x, const Irrep& rho);

/// Joint kernel of the H_k block generators and the component-group flip.
FixedVectorData fixed_subspace(const Irrep& rho, int k);

/// Projection of the highest vector onto the (1-dimensional) H_k-fixed line.
SparseVec averaged_vector(const Irrep& rho, int k);

struct PairingData {
  GaussianRational inner;
  mpq_class norm1_sq, norm2_sq;
};

/// Hermitian pairing of the two averaged fixed vectors plus their norms;
/// |C|^2 = |inner|^2 / (norm1_sq * norm2_sq) is basis independent.
PairingData pair_fixed(const Irrep& rho, int k1, int k2);

}  // namespace pfrad

#endif
