#ifndef PFRAD_ENVELOPING_HPP
#define PFRAD_ENVELOPING_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "pfrad/liealg.hpp"

namespace pfrad {

/// PBW monomial: nondecreasing sequence of basis-slot indices. The empty
/// sequence is the unit.
using Monomial = std::basic_string<unsigned char>;
using TermMap = std::map<Monomial, GaussianRational>;

constexpr int kMaxPfaffianSize = 8;   // largest |I| accepted
constexpr int kMaxTotalDegree = 12;   // largest monomial degree accepted

/// Shared straightening context: an adapted basis, its structure constants,
/// and a memo cache for monomial-times-generator products. The cache is a
/// transparent performance layer (results identical with it disabled) and is
/// safe for concurrent use.
class PBWContext : public std::enable_shared_from_this<PBWContext> {
 public:
  explicit PBWContext(AdaptedBasis basis);

  const AdaptedBasis& basis() const { return basis_; }
  int N() const { return basis_.N(); }
  int s() const { return basis_.s(); }
  int dim() const { return basis_.dim(); }

  /// Normal form of (normal monomial m) * (generator slot g).
  TermMap mono_times_gen(const Monomial& m, unsigned char g) const;

  int find_slot(SlotKind kind, int a, int b) const;

 private:
  AdaptedBasis basis_;
  // struct_[a*dim+b] holds [e_a, e_b] as (slot, coeff) pairs, for a > b
  std::vector<std::vector<std::pair<unsigned char, GaussianRational>>> struct_;
  mutable std::unordered_map<std::string, TermMap> memo_;
  mutable std::mutex memo_mutex_;
};

std::shared_ptr<const PBWContext> make_context(int N, int s);

/// Process-wide cache of contexts keyed by (N, s).
std::shared_ptr<const PBWContext> get_context(int N, int s);

/// Element of U(so(N,C)) in PBW normal form over an adapted basis.
class UElement {
 public:
  UElement() = default;
  explicit UElement(std::shared_ptr<const PBWContext> ctx) : ctx_(std::move(ctx)) {}

  static UElement zero(std::shared_ptr<const PBWContext> ctx) { return UElement(std::move(ctx)); }
  static UElement unit(std::shared_ptr<const PBWContext> ctx);
  static UElement from_lie(const LieElement& x, const std::shared_ptr<const PBWContext>& ctx);
  static UElement from_slot(const std::shared_ptr<const PBWContext>& ctx, int slot);

  const std::shared_ptr<const PBWContext>& ctx() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const Monomial& m, const GaussianRational& c);

  UElement& operator+=(const UElement& o);
  UElement& operator-=(const UElement& o);
  UElement& operator*=(const GaussianRational& c);
  friend UElement operator+(UElement a, const UElement& b) { return a += b; }
  friend UElement operator-(UElement a, const UElement& b) { return a -= b; }
  friend UElement operator*(const GaussianRational& c, UElement a) { return a *= c; }
  friend bool operator==(const UElement& a, const UElement& b);

  std::string to_json() const;
  static UElement from_json(const std::string& text);

 private:
  std::shared_ptr<const PBWContext> ctx_;
  TermMap terms_;
};

/// PBW normal form of the ordered product of the word's factors.
UElement normal_form(const std::vector<LieElement>& word,
                     const std::shared_ptr<const PBWContext>& ctx);

UElement multiply(const UElement& a, const UElement& b);
UElement commutator(const UElement& a, const UElement& b);

/// W(I): signed sum over perfect matchings of I of generator products (the
/// Pfaffian-type element). |I| = 0 yields the unit.
UElement pfaffian_element(const std::vector<int>& I, int N,
                          const std::shared_ptr<const PBWContext>& ctx);

/// W(p) = sum of W(J)^2 over all J of size 2p in {1..N}; central.
UElement pfaffian_casimir(int p, int N, const std::shared_ptr<const PBWContext>& ctx);

/// Sum of W(I)^2 over I of size 2p contained in {lo..hi}; zero when the
/// window is too small.
UElement block_casimir(int p, int N, int lo, int hi,
                       const std::shared_ptr<const PBWContext>& ctx);

/// Ad(u) extended multiplicatively to monomials; u must be exactly orthogonal
/// with det 1.
UElement adjoint(const Mat& u, const UElement& x);

/// Laplace expansion of W(I) along its q-th entry (1-based); equals
/// pfaffian_element(I) identically.
UElement laplace_expand(const std::vector<int>& I, int q, int N,
                        const std::shared_ptr<const PBWContext>& ctx);

/// Projection along the left ideal generated by the depth-s nilpotent slices:
/// keeps exactly the normal monomials whose leading factor is not nilpotent.
/// Re-expresses x in the depth-s basis if needed.
UElement hc_project(const UElement& x, int s);

/// The anti-automorphism extending X -> -X; an involution.
UElement antipode(const UElement& x);

/// Re-expresses x in another context's basis (same N).
UElement convert(const UElement& x, const std::shared_ptr<const PBWContext>& target);

/// All strictly increasing sequences of length s in {lo..hi}.
std::vector<std::vector<int>> increasing_sequences(int s, int lo, int hi);

}  // namespace pfrad

#endif
