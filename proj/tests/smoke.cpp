// Scratch driver used while bringing the engine up; superseded by the doctest
// suites.
#include <cassert>
#include <chrono>
#include <iostream>

#include "pfrad/enveloping.hpp"
#include "pfrad/hc_eigen.hpp"
#include "pfrad/repmod.hpp"

using namespace pfrad;

int main() {
  // bracket examples
  auto x12 = LieElement::generator(4, 1, 2);
  auto x34 = LieElement::generator(4, 3, 4);
  auto x13 = LieElement::generator(4, 1, 3);
  assert(bracket(x12, x34).is_zero());
  assert(bracket(x12, x13) == LieElement::generator(4, 2, 3));
  auto h1 = cartan_generator(4, 1);
  auto n21 = nilpotent_generator(4, 1, 2);
  assert(bracket(h1, n21) == n21);
  std::cout << "bracket ok\n";

  // adapted basis ranks
  for (int N = 3; N <= 8; ++N)
    for (int s = 0; s <= N / 2; ++s) {
      auto b = adapted_basis(N, s);
      assert(b.dim() == N * (N - 1) / 2);
    }
  std::cout << "adapted basis ok\n";

  auto ctx = get_context(4, 0);
  // normal form: X13 * X12 = X12 X13 - X23
  auto nf = normal_form({x13, x12}, ctx);
  auto expect = multiply(UElement::from_lie(x12, ctx), UElement::from_lie(x13, ctx)) -
                UElement::from_lie(LieElement::generator(4, 2, 3), ctx);
  assert(nf == expect);
  std::cout << "normal form ok\n";

  // pfaffian W(1,2,3,4) = X12X34 - X13X24 + X14X23
  auto w = pfaffian_element({1, 2, 3, 4}, 4, ctx);
  UElement w_expected(ctx);
  auto mk = [&](int a, int b, int c, int d) {
    return multiply(UElement::from_lie(LieElement::generator(4, a, b), ctx),
                    UElement::from_lie(LieElement::generator(4, c, d), ctx));
  };
  w_expected += mk(1, 2, 3, 4);
  w_expected -= mk(1, 3, 2, 4);
  w_expected += mk(1, 4, 2, 3);
  assert(w == w_expected);
  std::cout << "pfaffian ok\n";

  // centrality of W(p) at N=4
  for (int p = 1; p <= 2; ++p) {
    auto wp = pfaffian_casimir(p, 4, ctx);
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        auto gen = UElement::from_lie(LieElement::generator(4, i, j), ctx);
        assert(commutator(wp, gen).is_zero());
      }
  }
  std::cout << "centrality N=4 ok\n";

  // Prop 2-11(1): hc_project(W1, N/2) = -sum H_l(H_l - (N-2l))
  for (int N = 3; N <= 6; ++N) {
    auto c = get_context(N, N / 2);
    auto w1 = pfaffian_casimir(1, N, c);
    UElement rhs(c);
    for (int l = 1; l <= N / 2; ++l) {
      auto hl = UElement::from_slot(c, c->find_slot(SlotKind::Cartan, l, 0));
      auto lin = hl;
      lin -= GaussianRational(N - 2 * l) * UElement::unit(c);
      rhs -= multiply(hl, lin);
    }
    auto proj = hc_project(w1, N / 2);
    assert(proj == rhs);
  }
  std::cout << "Prop 2-11(1) ok\n";

  // d_one / d_general frozen examples
  assert(d_one(4, Weight{4, {1, 0}}) == -3);
  assert(d_one(4, Weight{4, {1, 1}}) == -4);
  assert(d_general(4, 2, Weight{4, {2, 2}}) == 36);
  assert(d_general(4, 2, Weight{4, {2, 0}}) == 0);
  std::cout << "eigen ok\n";

  // timing probe: W3 at N=6 centrality against one generator
  auto t0 = std::chrono::steady_clock::now();
  auto ctx6 = get_context(6, 0);
  auto w3 = pfaffian_casimir(3, 6, ctx6);
  auto t1 = std::chrono::steady_clock::now();
  std::cout << "W3(N=6) terms=" << w3.terms().size() << " build_ms="
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
  auto g = UElement::from_lie(LieElement::generator(6, 2, 5), ctx6);
  assert(commutator(w3, g).is_zero());
  auto t2 = std::chrono::steady_clock::now();
  std::cout << "one commutator_ms="
            << std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count() << "\n";

  // repmod: dimensions
  auto t3 = std::chrono::steady_clock::now();
  assert(build_irrep(4, Weight{4, {1, 0}})->dim() == 4);
  assert(build_irrep(3, Weight{3, {2}})->dim() == 5);
  assert(build_irrep(4, Weight{4, {1, 1}})->dim() == 3);
  assert(build_irrep(4, Weight{4, {2, 0}})->dim() == 9);
  assert(build_irrep(4, Weight{4, {2, 2}})->dim() == 5);
  assert(build_irrep(4, Weight{4, {2, -2}})->dim() == 5);
  std::cout << "irrep dims ok\n";

  // central scalars vs closed forms
  {
    auto ctx4 = get_context(4, 0);
    auto rho = build_irrep(4, Weight{4, {1, 0}});
    auto [c, ok] = central_scalar(pfaffian_casimir(1, 4, ctx4), *rho);
    assert(ok && c == GaussianRational(-3));
    auto rho11 = build_irrep(4, Weight{4, {1, 1}});
    auto [c11, ok11] = central_scalar(pfaffian_casimir(1, 4, ctx4), *rho11);
    assert(ok11 && c11 == GaussianRational(-4));
    auto rho22 = build_irrep(4, Weight{4, {2, 2}});
    auto [c22, ok22] = central_scalar(pfaffian_casimir(2, 4, ctx4), *rho22);
    assert(ok22 && c22 == GaussianRational(36));
    auto [cm, okm] = central_scalar(pfaffian_casimir(2, 4, ctx4),
                                    *build_irrep(4, Weight{4, {2, -2}}));
    assert(okm && cm == GaussianRational(36));
    auto [cx, okx] = central_scalar(UElement::from_lie(x12, ctx4), *rho);
    assert(!okx);
  }
  std::cout << "central scalars ok\n";

  // fixed subspaces per (2.13)
  {
    auto rho20 = build_irrep(4, Weight{4, {2, 0}});
    assert(fixed_subspace(*rho20, 2).dim() == 1);
    assert(fixed_subspace(*rho20, 1).dim() == 1);
    assert(fixed_subspace(*build_irrep(4, Weight{4, {1, 0}}), 2).dim() == 0);
    assert(fixed_subspace(*build_irrep(4, Weight{4, {2, 2}}), 1).dim() == 0);
    assert(fixed_subspace(*build_irrep(4, Weight{4, {2, 2}}), 2).dim() == 1);
  }
  std::cout << "fixed subspaces ok\n";

  // |C|^2 = 9/28 for (so(4), (2,0), k1=1, k2=2)
  {
    auto rho = build_irrep(4, Weight{4, {2, 0}});
    auto pd = pair_fixed(*rho, 1, 2);
    mpq_class c2 = pd.inner.norm_sq() / (pd.norm1_sq * pd.norm2_sq);
    std::cout << "C^2 = " << c2 << "\n";
    assert(c2 == mpq_class(1, 3));
  }
  auto t4 = std::chrono::steady_clock::now();
  std::cout << "repmod_ms="
            << std::chrono::duration_cast<std::chrono::milliseconds>(t4 - t3).count() << "\n";

  // timing: a heavier irrep + central scalar at N=5
  {
    auto ctx5 = get_context(5, 0);
    auto rho = build_irrep(5, Weight{5, {4, 0}});
    std::cout << "dim V_(4,0) so(5) = " << rho->dim() << "\n";
    auto tt0 = std::chrono::steady_clock::now();
    auto [c, ok] = central_scalar(pfaffian_casimir(2, 5, ctx5), *rho);
    auto tt1 = std::chrono::steady_clock::now();
    std::cout << "W2 scalar = " << c.str() << " ok=" << ok << " d_general="
              << d_general(5, 2, Weight{5, {4, 0}}) << " ms="
              << std::chrono::duration_cast<std::chrono::milliseconds>(tt1 - tt0).count()
              << "\n";
    assert(ok && c.is_real() && c.re() == d_general(5, 2, Weight{5, {4, 0}}));
  }

  std::cout << "smoke ok\n";
  return 0;
}
