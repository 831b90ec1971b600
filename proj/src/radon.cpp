#include "pfrad/radon.hpp"

#include <cmath>
#include <stdexcept>

namespace pfrad {

GrassmannPair::GrassmannPair(int N_, int k1_, int k2_) : N(N_), k1(k1_), k2(k2_) {
  if (N < 3 || k1 < 1 || k1 >= N || k2 < 1 || k2 >= N || k1 == k2)
    throw std::domain_error("GrassmannPair: need 1 <= k1,k2 < N, k1 != k2");
}

RadonEngine::RadonEngine(GrassmannPair pair, long max_degree)
    : pair_(pair), max_degree_(max_degree) {
  for (const auto& w : dominant_weights(pair_.N, max_degree)) {
    WeightData d;
    d.irrep = build_irrep(pair_.N, w);
    FixedVectorData fs = fixed_subspace(*d.irrep, pair_.k1);
    FixedVectorData ft = fixed_subspace(*d.irrep, pair_.k2);
    d.in_src = fs.dim() == 1;
    d.in_tgt = ft.dim() == 1;
    if (d.in_src) {
      d.u_src = averaged_vector(*d.irrep, pair_.k1);
      GaussianRational n = d.irrep->inner(d.u_src, d.u_src);
      d.n_src = n.re();
    }
    if (d.in_tgt) {
      d.u_tgt = averaged_vector(*d.irrep, pair_.k2);
      GaussianRational n = d.irrep->inner(d.u_tgt, d.u_tgt);
      d.n_tgt = n.re();
    }
    if (d.in_src && d.in_tgt) d.inner_ts = d.irrep->inner(d.u_tgt, d.u_src);

    CatalogEntry entry;
    entry.weight = w;
    entry.in_source = d.in_src;
    entry.in_target = d.in_tgt;
    entry.dim = d.irrep->dim();
    entry.d_one_val = d_one(pair_.N, w);
    if (d.in_src && d.in_tgt) entry.c_sq = c_sq_value(d);
    int rr = pair_.r() + 1;
    if (2 * rr <= pair_.N)
      entry.range_mult = (rr == 1) ? d_one(pair_.N, w) : d_general(pair_.N, rr, w);
    catalog_.push_back(std::move(entry));
    data_.emplace(w.entries, std::move(d));
  }
}

const RadonEngine::WeightData& RadonEngine::at(const std::vector<long>& w) const {
  auto it = data_.find(w);
  if (it == data_.end()) throw std::domain_error("weight outside the engine catalog");
  return it->second;
}

bool RadonEngine::weight_in(Side side, const std::vector<long>& w) const {
  const WeightData& d = at(w);
  return side == Side::Source ? d.in_src : d.in_tgt;
}

int RadonEngine::weight_dim(const std::vector<long>& w) const { return at(w).irrep->dim(); }

std::optional<mpq_class> RadonEngine::c_squared(const std::vector<long>& w) const {
  const WeightData& d = at(w);
  if (!(d.in_src && d.in_tgt)) return std::nullopt;
  return c_sq_value(d);
}

mpq_class RadonEngine::c_sq_value(const WeightData& d) const {
  return d.inner_ts.norm_sq() / (d.n_src * d.n_tgt);
}

const Mat& RadonEngine::gram(const std::vector<long>& w) const {
  std::lock_guard<std::mutex> lock(gram_mutex_);
  WeightData& d = const_cast<WeightData&>(at(w));
  if (!d.gram) {
    int n = d.irrep->dim();
    Mat g(n, std::vector<GaussianRational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g[i][j] = d.irrep->inner(d.irrep->basis_vectors()[i], d.irrep->basis_vectors()[j]);
    d.gram = std::move(g);
  }
  return *d.gram;
}

void RadonEngine::canonicalize(Multiplier& m, const WeightData& d) const {
  while (m.cbar > 0 && m.c > 0) {
    m.q *= GaussianRational(c_sq_value(d));
    --m.cbar;
    --m.c;
  }
  while (m.cbar < 0 && m.c < 0) {
    m.q /= GaussianRational(c_sq_value(d));
    ++m.cbar;
    ++m.c;
  }
  if (m.q.is_zero()) m = Multiplier{GaussianRational(0), 0, 0};
}

mpq_class RadonEngine::mult_norm_sq(const Multiplier& m, const WeightData& d) const {
  mpq_class out = m.q.norm_sq();
  int e = m.cbar + m.c;
  mpq_class c2 = (e != 0) ? c_sq_value(d) : mpq_class(0);
  for (int t = 0; t < e; ++t) out *= c2;
  for (int t = 0; t > e; --t) out /= c2;
  return out;
}

std::complex<double> RadonEngine::mult_value(const Multiplier& m, const WeightData& d) const {
  std::complex<double> out = m.q.to_complex();
  if (m.cbar != 0 || m.c != 0) {
    std::complex<double> c =
        d.inner_ts.to_complex() / std::sqrt(mpq_class(d.n_src * d.n_tgt).get_d());
    out *= std::pow(std::conj(c), m.cbar) * std::pow(c, m.c);
  }
  return out;
}

const SparseVec& RadonEngine::side_vector(const WeightData& d, Side side) const {
  return side == Side::Source ? d.u_src : d.u_tgt;
}

mpq_class RadonEngine::side_norm_sq(const WeightData& d, Side side) const {
  return side == Side::Source ? d.n_src : d.n_tgt;
}

SpectralFunction RadonEngine::constant(Side side, const GaussianRational& value) const {
  SpectralFunction f(pair_, side);
  if (value.is_zero()) return f;
  std::vector<long> zero(pair_.N / 2, 0);
  SpectralComponent comp;
  comp.coeffs = {value.conj()};
  f.components.emplace(zero, std::move(comp));
  return f;
}

SpectralFunction RadonEngine::make_function(
    Side side, const std::map<std::vector<long>, std::vector<GaussianRational>>& comps) const {
  SpectralFunction f(pair_, side);
  for (const auto& [w, coeffs] : comps) {
    const WeightData& d = at(w);
    if (!(side == Side::Source ? d.in_src : d.in_tgt))
      throw std::invalid_argument("make_function: weight not admissible for this side");
    if (static_cast<int>(coeffs.size()) != d.irrep->dim())
      throw std::invalid_argument("make_function: coefficient vector length");
    bool nonzero = false;
    for (const auto& c : coeffs) nonzero |= !c.is_zero();
    if (!nonzero) continue;
    SpectralComponent comp;
    comp.coeffs = coeffs;
    f.components.emplace(w, std::move(comp));
  }
  return f;
}

SpectralFunction RadonEngine::random_function(Side side,
                                              const std::vector<std::vector<long>>& weights,
                                              std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(-3, 3);
  std::map<std::vector<long>, std::vector<GaussianRational>> comps;
  for (const auto& w : weights) {
    const WeightData& d = at(w);
    std::vector<GaussianRational> coeffs(d.irrep->dim());
    bool nonzero = false;
    for (auto& c : coeffs) {
      int re = coin(rng), im = coin(rng);
      c = GaussianRational(mpq_class(re), mpq_class(im));
      nonzero |= !c.is_zero();
    }
    if (!nonzero) coeffs[0] = GaussianRational(1);
    comps.emplace(w, std::move(coeffs));
  }
  return make_function(side, comps);
}

SpectralFunction RadonEngine::radon_forward(const SpectralFunction& f) const {
  if (f.side != Side::Source) throw std::invalid_argument("radon_forward: expects a source function");
  SpectralFunction out(pair_, Side::Target);
  for (const auto& [w, comp] : f.components) {
    const WeightData& d = at(w);
    if (!d.in_src) throw std::runtime_error("radon_forward: invariant violation (no source fixed vector)");
    if (!d.in_tgt) {
      if (pair_.r() <= pair_.rp())
        throw std::runtime_error("radon_forward: invariant violation (no target fixed vector)");
      continue;  // r > r': such components are annihilated
    }
    SpectralComponent next = comp;
    next.mult.cbar += 1;
    canonicalize(next.mult, d);
    out.components.emplace(w, std::move(next));
  }
  return out;
}

SpectralFunction RadonEngine::radon_dual(const SpectralFunction& g) const {
  if (g.side != Side::Target) throw std::invalid_argument("radon_dual: expects a target function");
  SpectralFunction out(pair_, Side::Source);
  for (const auto& [w, comp] : g.components) {
    const WeightData& d = at(w);
    if (!d.in_src) continue;  // killed: no source fixed vector
    SpectralComponent next = comp;
    next.mult.c += 1;
    canonicalize(next.mult, d);
    out.components.emplace(w, std::move(next));
  }
  return out;
}

SpectralFunction RadonEngine::radon_plus(const SpectralFunction& g) const {
  if (g.side != Side::Target) throw std::invalid_argument("radon_plus: expects a target function");
  SpectralFunction out(pair_, Side::Source);
  for (const auto& [w, comp] : g.components) {
    const WeightData& d = at(w);
    if (!d.in_src) continue;  // restriction to source-admissible weights
    if (d.inner_ts.is_zero())
      throw std::runtime_error("radon_plus: vanishing C(tau) on a source weight");
    SpectralComponent next = comp;
    next.mult.cbar -= 1;
    canonicalize(next.mult, d);
    out.components.emplace(w, std::move(next));
  }
  return out;
}

std::pair<SpectralFunction, mpq_class> RadonEngine::range_residual(
    const SpectralFunction& g) const {
  if (g.side != Side::Target)
    throw std::invalid_argument("range_residual: expects a target function");
  int rr = pair_.r() + 1;
  if (2 * rr > pair_.N)
    throw std::domain_error("range_residual: no range operator at this size");
  SpectralFunction out(pair_, Side::Target);
  mpq_class total = 0;
  for (const auto& [w, comp] : g.components) {
    const WeightData& d = at(w);
    Weight wt{pair_.N, w};
    mpq_class mult = (rr == 1) ? d_one(pair_.N, wt) : d_general(pair_.N, rr, wt);
    if (sgn(mult) == 0) continue;
    SpectralComponent next = comp;
    next.mult.q *= GaussianRational(mult);
    out.components.emplace(w, std::move(next));
    // squared L2 norm contribution of the scaled component
    const Mat& G = gram(w);
    mpq_class wnorm = 0;
    for (std::size_t i = 0; i < comp.coeffs.size(); ++i)
      for (std::size_t j = 0; j < comp.coeffs.size(); ++j) {
        GaussianRational t = comp.coeffs[i] * comp.coeffs[j].conj() * G[i][j];
        wnorm += t.re();
      }
    total += mult * mult * mult_norm_sq(comp.mult, d) * wnorm * d.irrep->dim();
  }
  return {std::move(out), std::move(total)};
}

bool RadonEngine::equal(const SpectralFunction& a, const SpectralFunction& b) const {
  if (a.side != b.side) return false;
  auto ai = a.components.begin();
  auto bi = b.components.begin();
  while (ai != a.components.end() && bi != b.components.end()) {
    if (ai->first != bi->first) return false;
    const WeightData& d = at(ai->first);
    Multiplier ma = ai->second.mult, mb = bi->second.mult;
    canonicalize(ma, d);
    canonicalize(mb, d);
    if (ma.cbar != mb.cbar || ma.c != mb.c) return false;
    if (ai->second.coeffs.size() != bi->second.coeffs.size()) return false;
    for (std::size_t i = 0; i < ai->second.coeffs.size(); ++i)
      if (ma.q * ai->second.coeffs[i] != mb.q * bi->second.coeffs[i]) return false;
    ++ai;
    ++bi;
  }
  return ai == a.components.end() && bi == b.components.end();
}

mpq_class RadonEngine::norm_sq(const SpectralFunction& f) const {
  mpq_class total = 0;
  for (const auto& [w, comp] : f.components) {
    const WeightData& d = at(w);
    const Mat& G = gram(w);
    mpq_class wnorm = 0;
    for (std::size_t i = 0; i < comp.coeffs.size(); ++i)
      for (std::size_t j = 0; j < comp.coeffs.size(); ++j) {
        GaussianRational t = comp.coeffs[i] * comp.coeffs[j].conj() * G[i][j];
        wnorm += t.re();
      }
    total += mult_norm_sq(comp.mult, d) * wnorm * d.irrep->dim();
  }
  return total;
}

namespace {

void check_orthogonal(const std::vector<std::vector<double>>& u, int N) {
  if (static_cast<int>(u.size()) != N) throw std::invalid_argument("evaluate: matrix size");
  double det_sign = 1.0;
  std::vector<std::vector<double>> a = u;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double dot = 0;
      for (int k = 0; k < N; ++k) dot += u[k][i] * u[k][j];
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot - want) > 1e-12)
        throw std::invalid_argument("evaluate: matrix is not orthogonal within 1e-12");
    }
  }
  // determinant via elimination
  for (int c = 0; c < N; ++c) {
    int p = c;
    for (int r = c + 1; r < N; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-14) throw std::invalid_argument("evaluate: singular matrix");
    if (p != c) {
      std::swap(a[p], a[c]);
      det_sign = -det_sign;
    }
    det_sign *= a[c][c] > 0 ? 1.0 : -1.0;
    for (int r = c + 1; r < N; ++r) {
      double f = a[r][c] / a[c][c];
      for (int j = c; j < N; ++j) a[r][j] -= f * a[c][j];
    }
  }
  if (det_sign < 0) throw std::invalid_argument("evaluate: det != 1");
}

}  // namespace

std::complex<double> RadonEngine::evaluate(const SpectralFunction& f,
                                           const std::vector<std::vector<double>>& u) const {
  check_orthogonal(u, pair_.N);
  std::complex<double> total = 0.0;
  for (const auto& [w, comp] : f.components) {
    const WeightData& d = at(w);
    const SparseVec& vside = side_vector(d, f.side);
    auto v_std = d.irrep->to_std_complex(vside);
    auto w_std = d.irrep->to_std_complex(d.irrep->from_coords(comp.coeffs));
    auto img = d.irrep->apply_group_std(u, v_std);
    std::complex<double> dot = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) dot += img[i] * std::conj(w_std[i]);
    double nside = std::sqrt(mpq_class(side_norm_sq(d, f.side)).get_d());
    total += static_cast<double>(d.irrep->dim()) * mult_value(comp.mult, d) * dot / nside;
  }
  return total;
}

std::vector<std::vector<double>> haar_orthogonal(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> a(k, std::vector<double>(k));
  for (auto& row : a)
    for (auto& v : row) v = gauss(rng);
  for (int c = 0; c < k; ++c) {
    for (int p = 0; p < c; ++p) {
      double dot = 0;
      for (int r = 0; r < k; ++r) dot += a[r][c] * a[r][p];
      for (int r = 0; r < k; ++r) a[r][c] -= dot * a[r][p];
    }
    double norm = 0;
    for (int r = 0; r < k; ++r) norm += a[r][c] * a[r][c];
    norm = std::sqrt(norm);
    for (int r = 0; r < k; ++r) a[r][c] /= norm;
  }
  return a;
}

std::vector<std::vector<double>> haar_block_pair(int N, int k, std::mt19937_64& rng) {
  auto b1 = haar_orthogonal(N - k, rng);
  auto b2 = haar_orthogonal(k, rng);
  auto det = [](const std::vector<std::vector<double>>& m) {
    std::vector<std::vector<double>> a = m;
    int n = static_cast<int>(a.size());
    double d = 1.0;
    for (int c = 0; c < n; ++c) {
      int p = c;
      for (int r = c + 1; r < n; ++r)
        if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
      if (p != c) {
        std::swap(a[p], a[c]);
        d = -d;
      }
      d *= a[c][c];
      for (int r = c + 1; r < n; ++r) {
        double f = a[r][c] / a[c][c];
        for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      }
    }
    return d;
  };
  if (det(b1) * det(b2) < 0)
    for (int r = 0; r < N - k; ++r) b1[r][0] = -b1[r][0];
  std::vector<std::vector<double>> h(N, std::vector<double>(N, 0.0));
  for (int i = 0; i < N - k; ++i)
    for (int j = 0; j < N - k; ++j) h[i][j] = b1[i][j];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) h[N - k + i][N - k + j] = b2[i][j];
  return h;
}

std::vector<std::vector<double>> RadonEngine::random_rotation(std::mt19937_64& rng) const {
  auto u = haar_orthogonal(pair_.N, rng);
  // fix det = +1
  std::vector<std::vector<double>> a = u;
  double d = 1.0;
  int n = pair_.N;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  if (d < 0)
    for (int r = 0; r < n; ++r) u[r][0] = -u[r][0];
  return u;
}

std::complex<double> RadonEngine::direct_forward_oracle(
    const SpectralFunction& f, const std::vector<std::vector<double>>& u, long samples,
    std::uint64_t seed) const {
  if (samples < 1) throw std::invalid_argument("direct_forward_oracle: samples >= 1");
  check_orthogonal(u, pair_.N);
  // precompute per-component std-basis data once
  struct Pre {
    std::vector<std::complex<double>> v_std, w_std;
    std::complex<double> scale;
    const Irrep* irrep;
  };
  std::vector<Pre> pres;
  for (const auto& [w, comp] : f.components) {
    const WeightData& d = at(w);
    Pre p;
    p.irrep = d.irrep.get();
    p.v_std = d.irrep->to_std_complex(side_vector(d, f.side));
    p.w_std = d.irrep->to_std_complex(d.irrep->from_coords(comp.coeffs));
    p.scale = static_cast<double>(d.irrep->dim()) * mult_value(comp.mult, d) /
              std::sqrt(mpq_class(side_norm_sq(d, f.side)).get_d());
    pres.push_back(std::move(p));
  }
  std::mt19937_64 rng(seed);
  int N = pair_.N;
  std::complex<double> acc = 0.0;
  for (long s = 0; s < samples; ++s) {
    auto h = haar_block_pair(N, pair_.k2, rng);
    // uh
    std::vector<std::vector<double>> uh(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        if (u[i][k] == 0.0) continue;
        for (int j = 0; j < N; ++j) uh[i][j] += u[i][k] * h[k][j];
      }
    std::complex<double> val = 0.0;
    for (const auto& p : pres) {
      auto img = p.irrep->apply_group_std(uh, p.v_std);
      std::complex<double> dot = 0.0;
      for (std::size_t i = 0; i < img.size(); ++i) dot += img[i] * std::conj(p.w_std[i]);
      val += p.scale * dot;
    }
    acc += val;
  }
  return acc / static_cast<double>(samples);
}

}  // namespace pfrad
