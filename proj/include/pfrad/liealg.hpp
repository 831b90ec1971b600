#ifndef PFRAD_LIEALG_HPP
#define PFRAD_LIEALG_HPP

#include <map>
#include <string>
#include <vector>

#include "pfrad/gaussian.hpp"
#include "pfrad/ratmat.hpp"

namespace pfrad {

/// Index pair of the generator X(i,j) = E(j,i) - E(i,j) in so(N), 1 <= i < j <= N.
struct GeneratorIndex {
  int i = 0, j = 0;
  friend auto operator<=>(const GeneratorIndex&, const GeneratorIndex&) = default;
};

/// Sparse element of so(N,C) in the X(i,j) basis over Gaussian rationals.
/// Only i < j pairs are stored; X(j,i) is materialized as -X(i,j) on input.
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(int N) : N_(N) {}

  static LieElement generator(int N, int i, int j);

  int N() const { return N_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<GeneratorIndex, GaussianRational>& terms() const { return terms_; }

  void add_term(int i, int j, const GaussianRational& c);

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const GaussianRational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const GaussianRational& c, LieElement a) { return a *= c; }
  LieElement operator-() const;
  friend bool operator==(const LieElement& a, const LieElement& b) {
    return a.N_ == b.N_ && a.terms_ == b.terms_;
  }

  /// Exact N x N matrix of this element in the standard basis of C^N.
  Mat to_matrix() const;

  std::string to_json() const;
  static LieElement from_json(const std::string& text);

 private:
  int N_ = 0;
  std::map<GeneratorIndex, GaussianRational> terms_;
};

/// [a, b], computed from the structure constants of the X(i,j) basis.
LieElement bracket(const LieElement& a, const LieElement& b);

/// N(q,l) = X(l, N+1-q) + i*X(q, l) for q < l < N+1-q; the l-th generator of
/// the q-th nilradical slice. Rejects q = N/2 when N is even.
LieElement nilpotent_generator(int N, int q, int l);

/// The opposite element X(l, N+1-q) - i*X(q, l).
LieElement opposite_generator(int N, int q, int l);

/// H(l) = i * X(l, N+1-l), the l-th Cartan generator, 1 <= l <= N/2.
LieElement cartan_generator(int N, int l);

enum class SlotKind { Nilpotent, Cartan, Opposite, Block };

struct SlotInfo {
  SlotKind kind;
  int a = 0, b = 0;  // (q,l) for Nilpotent/Opposite, (l,0) for Cartan, (i,j) for Block
};

/// Ordered basis of so(N,C) adapted to the depth-s nilradical:
/// nilpotent slice generators first, then the full Cartan, then the opposite
/// elements, then the X(i,j) completing the centralizer block.
class AdaptedBasis {
 public:
  static AdaptedBasis build(int N, int s);

  int N() const { return N_; }
  int s() const { return s_; }
  int dim() const { return static_cast<int>(elements_.size()); }
  int nilpotent_count() const { return nil_count_; }

  const std::vector<LieElement>& elements() const { return elements_; }
  const LieElement& element(int slot) const { return elements_[slot]; }
  const SlotInfo& slot_info(int slot) const { return info_[slot]; }

  /// Coordinates of x in this basis (exact; length dim()).
  std::vector<GaussianRational> to_slots(const LieElement& x) const;

  /// Columns are the X(i,j)-coordinates of the basis elements.
  const Mat& change_of_basis() const { return cob_; }

 private:
  int N_ = 0, s_ = 0, nil_count_ = 0;
  std::vector<LieElement> elements_;
  std::vector<SlotInfo> info_;
  Mat cob_, cob_inv_;
};

AdaptedBasis adapted_basis(int N, int s);

/// Lexicographic index of the pair (i,j), i < j, within 0..N(N-1)/2-1.
int pair_index(int N, int i, int j);

}  // namespace pfrad

#endif
