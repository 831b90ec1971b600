#include "pfrad/repmod.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace pfrad {

namespace {

constexpr long kDegreeCap = 6;

void accumulate(SparseVec& into, unsigned int key, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = into.find(key);
  if (it == into.end()) {
    into.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
  }
}

// Rescales to integer entries with content 1 (positive factor only).
void normalize_content(SparseVec& v) {
  if (v.empty()) return;
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& [k, c] : v) {
    mpz_class d = lcm(c.re().get_den(), c.im().get_den());
    den_lcm = lcm(den_lcm, d);
  }
  for (auto& [k, c] : v) {
    mpq_class re = c.re() * den_lcm, im = c.im() * den_lcm;
    num_gcd = gcd(num_gcd, re.get_num());
    num_gcd = gcd(num_gcd, im.get_num());
  }
  if (num_gcd == 0) num_gcd = 1;
  GaussianRational f(mpq_class(den_lcm) / mpq_class(num_gcd));
  for (auto& [k, c] : v) c *= f;
}

}  // namespace

std::vector<long> Irrep::weight_of(unsigned int idx) const {
  std::vector<long> w(N_ / 2, 0);
  for (int k = 0; k < degree_; ++k) {
    int col = static_cast<int>(idx % N_);
    idx /= N_;
    const auto& fw = factor_weights_[col];
    for (std::size_t l = 0; l < fw.size(); ++l) w[l] += fw[l];
  }
  return w;
}

int Irrep::mirror_index(int i) const {
  if (!mirrored_) return i;
  if (i == N_ / 2) return N_ / 2 + 1;
  if (i == N_ / 2 + 1) return N_ / 2;
  return i;
}

SparseVec Irrep::apply_lie(const LieElement& x, const SparseVec& v) const {
  if (x.N() != N_) throw std::invalid_argument("apply_lie: dimension mismatch");
  SparseVec out;
  for (const auto& [gi, coeff] : x.terms()) {
    int i = mirror_index(gi.i), j = mirror_index(gi.j);
    GaussianRational c = coeff;
    if (i > j) {
      std::swap(i, j);
      c = -c;
    }
    const Mat& A = gen_table_[pair_index(N_, i, j)];
    for (const auto& [idx, val] : v) {
      unsigned int rest = idx;
      unsigned int pw = 1;
      for (int k = 0; k < degree_; ++k) {
        int col = static_cast<int>(rest % N_);
        rest /= N_;
        for (int r = 0; r < N_; ++r) {
          if (A[r][col].is_zero()) continue;
          unsigned int nidx = idx + static_cast<unsigned int>(r - col) * pw;
          accumulate(out, nidx, val * c * A[r][col]);
        }
        pw *= N_;
      }
    }
  }
  return out;
}

SparseVec Irrep::apply_element(const UElement& x, const SparseVec& v) const {
  if (x.ctx()->N() != N_) throw std::invalid_argument("apply_element: dimension mismatch");
  const AdaptedBasis& basis = x.ctx()->basis();
  // monomials keyed by their reversal so shared right factors are applied once
  std::vector<std::pair<Monomial, GaussianRational>> items;
  items.reserve(x.terms().size());
  for (const auto& [m, c] : x.terms()) {
    Monomial rev(m.rbegin(), m.rend());
    items.emplace_back(std::move(rev), c);
  }
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t depth,
                 const SparseVec& cur) -> void {
    while (lo < hi && items[lo].first.size() == depth) {
      for (const auto& [k, c] : cur) accumulate(out, k, c * items[lo].second);
      ++lo;
    }
    while (lo < hi) {
      unsigned char g = items[lo].first[depth];
      std::size_t mid = lo;
      while (mid < hi && items[mid].first[depth] == g) ++mid;
      SparseVec next = apply_lie(basis.element(g), cur);
      if (!next.empty()) self(self, lo, mid, depth + 1, next);
      lo = mid;
    }
  };
  rec(rec, 0, items.size(), 0, v);
  return out;
}

SparseVec Irrep::apply_group(const Mat& g_std, const SparseVec& v) const {
  if (static_cast<int>(g_std.size()) != N_)
    throw std::invalid_argument("apply_group: dimension mismatch");
  // conjugate by the mirror swap, then move to the weight basis
  Mat g = g_std;
  if (mirrored_) {
    Mat conj(N_, std::vector<GaussianRational>(N_));
    for (int a = 0; a < N_; ++a)
      for (int b = 0; b < N_; ++b)
        conj[a][b] = g_std[mirror_index(a + 1) - 1][mirror_index(b + 1) - 1];
    g = std::move(conj);
  }
  Mat B = mat_mul(p_inv_, mat_mul(g, p_));
  SparseVec out;
  for (const auto& [idx, val] : v) {
    std::vector<int> tuple(degree_);
    unsigned int rest = idx;
    for (int k = 0; k < degree_; ++k) {
      tuple[k] = static_cast<int>(rest % N_);
      rest /= N_;
    }
    // expand the tensor product over all factor replacements
    std::vector<std::pair<unsigned int, GaussianRational>> cur{{0u, val}};
    unsigned int pw = 1;
    for (int k = 0; k < degree_; ++k) {
      std::vector<std::pair<unsigned int, GaussianRational>> next;
      for (int r = 0; r < N_; ++r) {
        if (B[r][tuple[k]].is_zero()) continue;
        for (const auto& [pidx, pval] : cur)
          next.emplace_back(pidx + static_cast<unsigned int>(r) * pw,
                            pval * B[r][tuple[k]]);
      }
      cur = std::move(next);
      pw *= N_;
    }
    for (const auto& [k, c] : cur) accumulate(out, k, c);
  }
  return out;
}

std::vector<GaussianRational> Irrep::coords(const SparseVec& v) const {
  std::vector<GaussianRational> out(dim());
  // split by weight space, then reduce within each tracker
  std::map<std::vector<long>, SparseVec> pieces;
  for (const auto& [k, c] : v) pieces[weight_of(k)].emplace(k, c);
  for (auto& [w, piece] : pieces) {
    auto tit = trackers_.find(w);
    if (tit == trackers_.end()) throw std::runtime_error("coords: vector outside the span");
    const Tracker& t = tit->second;
    while (!piece.empty()) {
      auto pit = t.pivot_to_row.find(piece.begin()->first);
      if (pit == t.pivot_to_row.end())
        throw std::runtime_error("coords: vector outside the span");
      GaussianRational f = piece.begin()->second;
      const SparseVec& row = t.rows[pit->second];
      for (const auto& [k, c] : row) accumulate(piece, k, -f * c);
      for (const auto& [b, c] : t.combos[pit->second]) out[b] += f * c;
    }
  }
  return out;
}

SparseVec Irrep::from_coords(const std::vector<GaussianRational>& c) const {
  if (static_cast<int>(c.size()) != dim()) throw std::invalid_argument("from_coords: size");
  SparseVec out;
  for (int j = 0; j < dim(); ++j) {
    if (c[j].is_zero()) continue;
    for (const auto& [k, v] : basis_[j]) accumulate(out, k, c[j] * v);
  }
  return out;
}

GaussianRational Irrep::inner(const SparseVec& a, const SparseVec& b) const {
  GaussianRational sum;
  for (const auto& [k, av] : a) {
    auto it = b.find(k);
    if (it == b.end()) continue;
    // gram factor: 2 per non-middle tensor factor
    unsigned int rest = k;
    long twos = 0;
    for (int t = 0; t < degree_; ++t) {
      int col = static_cast<int>(rest % N_);
      rest /= N_;
      if (!(N_ % 2 == 1 && col == N_ - 1)) ++twos;
    }
    GaussianRational g(mpq_class(mpz_class(1) << twos));
    sum += av * it->second.conj() * g;
  }
  return sum;
}

Mat Irrep::generator_matrix(int i, int j) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = gen_cache_.find({i, j});
    if (it != gen_cache_.end()) return it->second;
  }
  LieElement x = LieElement::generator(N_, i, j);
  Mat m(dim(), std::vector<GaussianRational>(dim()));
  for (int col = 0; col < dim(); ++col) {
    auto c = coords(apply_lie(x, basis_[col]));
    for (int r = 0; r < dim(); ++r) m[r][col] = c[r];
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  gen_cache_.emplace(std::make_pair(i, j), m);
  return m;
}

std::vector<std::complex<double>> Irrep::to_std_complex(const SparseVec& v) const {
  std::size_t total = 1;
  for (int k = 0; k < degree_; ++k) total *= N_;
  std::vector<std::complex<double>> out(total, 0.0);
  for (const auto& [idx, val] : v) {
    std::vector<int> tuple(degree_);
    unsigned int rest = idx;
    for (int k = 0; k < degree_; ++k) {
      tuple[k] = static_cast<int>(rest % N_);
      rest /= N_;
    }
    std::vector<std::pair<unsigned int, std::complex<double>>> cur{{0u, val.to_complex()}};
    unsigned int pw = 1;
    for (int k = 0; k < degree_; ++k) {
      std::vector<std::pair<unsigned int, std::complex<double>>> next;
      for (int r = 0; r < N_; ++r) {
        if (p_[r][tuple[k]].is_zero()) continue;
        std::complex<double> f = p_[r][tuple[k]].to_complex();
        for (const auto& [pidx, pval] : cur)
          next.emplace_back(pidx + static_cast<unsigned int>(r) * pw, pval * f);
      }
      cur = std::move(next);
      pw *= N_;
    }
    for (const auto& [k, c] : cur) out[k] += c;
  }
  return out;
}

std::vector<std::complex<double>> Irrep::apply_group_std(
    const std::vector<std::vector<double>>& u,
    const std::vector<std::complex<double>>& v) const {
  std::vector<std::complex<double>> cur = v;
  std::size_t total = cur.size();
  std::vector<std::complex<double>> next(total);
  std::size_t pw = 1;
  for (int k = 0; k < degree_; ++k) {
    std::fill(next.begin(), next.end(), std::complex<double>(0.0));
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (cur[idx] == std::complex<double>(0.0)) continue;
      int col = static_cast<int>((idx / pw) % N_);
      std::size_t base = idx - static_cast<std::size_t>(col) * pw;
      for (int r = 0; r < N_; ++r) {
        double f = mirrored_ ? u[mirror_index(r + 1) - 1][mirror_index(col + 1) - 1] : u[r][col];
        if (f != 0.0) next[base + static_cast<std::size_t>(r) * pw] += f * cur[idx];
      }
    }
    std::swap(cur, next);
    pw *= N_;
  }
  return cur;
}

std::shared_ptr<const Irrep> Irrep::build(int N, const Weight& lambda) {
  if (N < 3) throw std::domain_error("build_irrep: N >= 3 required");
  if (lambda.N != N || !lambda.is_dominant())
    throw std::domain_error("build_irrep: weight not dominant");
  if (lambda.degree() > kDegreeCap)
    throw resource_error("build_irrep: weight degree exceeds cap");

  if (N % 2 == 0 && !lambda.entries.empty() && lambda.entries.back() < 0) {
    Weight pos = lambda;
    pos.entries.back() = -pos.entries.back();
    auto base = build_irrep(N, pos);
    auto rho = std::shared_ptr<Irrep>(new Irrep());
    rho->N_ = base->N_;
    rho->degree_ = base->degree_;
    rho->mirrored_ = true;
    rho->lambda_ = lambda;
    rho->basis_ = base->basis_;
    rho->highest_ = base->highest_;
    rho->trackers_ = base->trackers_;
    rho->factor_weights_ = base->factor_weights_;
    rho->gen_table_ = base->gen_table_;
    rho->p_ = base->p_;
    rho->p_inv_ = base->p_inv_;
    return rho;
  }

  auto rho = std::shared_ptr<Irrep>(new Irrep());
  rho->N_ = N;
  rho->lambda_ = lambda;
  rho->degree_ = static_cast<int>(lambda.degree());
  int h = N / 2;

  // weight basis of C^N: f_l^+ = e_l + i e_{N+1-l}, f_l^- = e_l - i e_{N+1-l}
  rho->p_ = Mat(N, std::vector<GaussianRational>(N));
  rho->factor_weights_.assign(N, std::vector<long>(h, 0));
  for (int l = 1; l <= h; ++l) {
    rho->p_[l - 1][2 * (l - 1)] = GaussianRational(1);
    rho->p_[N - l][2 * (l - 1)] = GaussianRational::i();
    rho->p_[l - 1][2 * (l - 1) + 1] = GaussianRational(1);
    rho->p_[N - l][2 * (l - 1) + 1] = -GaussianRational::i();
    rho->factor_weights_[2 * (l - 1)][l - 1] = 1;
    rho->factor_weights_[2 * (l - 1) + 1][l - 1] = -1;
  }
  if (N % 2 == 1) rho->p_[(N - 1) / 2][N - 1] = GaussianRational(1);
  auto pinv = mat_inverse(rho->p_);
  if (!pinv) throw std::logic_error("build_irrep: weight basis is singular");
  rho->p_inv_ = std::move(*pinv);

  rho->gen_table_.resize(N * (N - 1) / 2);
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j)
      rho->gen_table_[pair_index(N, i, j)] =
          mat_mul(rho->p_inv_, mat_mul(LieElement::generator(N, i, j).to_matrix(), rho->p_));

  int d = rho->degree_;
  std::vector<long> target(lambda.entries.begin(), lambda.entries.end());

  auto add_to_tracker = [&rho](const SparseVec& v) -> bool {
    std::vector<long> w = rho->weight_of(v.begin()->first);
    Tracker& t = rho->trackers_[w];
    SparseVec res = v;
    std::map<int, GaussianRational> combo;
    combo.emplace(static_cast<int>(rho->basis_.size()), GaussianRational(1));
    while (!res.empty()) {
      auto pit = t.pivot_to_row.find(res.begin()->first);
      if (pit == t.pivot_to_row.end()) break;
      GaussianRational f = res.begin()->second;
      for (const auto& [k, c] : t.rows[pit->second]) accumulate(res, k, -f * c);
      for (const auto& [b, c] : t.combos[pit->second]) {
        combo[b] -= f * c;
        if (combo[b].is_zero()) combo.erase(b);
      }
    }
    if (res.empty()) return false;
    GaussianRational inv = GaussianRational(1) / res.begin()->second;
    for (auto& [k, c] : res) c *= inv;
    std::map<int, GaussianRational> scaled;
    for (auto& [b, c] : combo) scaled.emplace(b, c * inv);
    t.pivot_to_row.emplace(res.begin()->first, static_cast<int>(t.rows.size()));
    t.rows.push_back(std::move(res));
    t.combos.push_back(std::move(scaled));
    rho->basis_.push_back(v);
    return true;
  };

  if (d == 0) {
    SparseVec one{{0u, GaussianRational(1)}};
    rho->highest_ = one;
    add_to_tracker(one);
    return rho;
  }

  // weight-lambda tuples
  std::vector<unsigned int> wl;
  unsigned int total = 1;
  for (int k = 0; k < d; ++k) total *= N;
  for (unsigned int idx = 0; idx < total; ++idx)
    if (rho->weight_of(idx) == target) wl.push_back(idx);
  if (wl.empty())
    throw std::runtime_error("build_irrep: weight not attainable at this tensor degree");

  // raising operators
  std::vector<LieElement> raising;
  for (int q = 1; q <= h; ++q) {
    if (N % 2 == 0 && q == h) break;
    for (int l = q + 1; l <= N - q; ++l) raising.push_back(nilpotent_generator(N, q, l));
  }
  std::map<unsigned int, int> col_of;
  for (std::size_t c = 0; c < wl.size(); ++c) col_of[wl[c]] = static_cast<int>(c);
  RowReducer reducer(static_cast<int>(wl.size()));
  for (std::size_t op = 0; op < raising.size(); ++op) {
    std::map<unsigned int, SparseRow> rows;
    for (std::size_t c = 0; c < wl.size(); ++c) {
      SparseVec img = rho->apply_lie(raising[op], SparseVec{{wl[c], GaussianRational(1)}});
      for (const auto& [k, v] : img) rows[k][static_cast<int>(c)] = v;
    }
    for (auto& [k, row] : rows) reducer.add_row(std::move(row));
  }
  auto kernel = reducer.kernel_basis();
  if (kernel.empty())
    throw std::runtime_error("build_irrep: no highest vector of this weight at this degree");
  // multiplicity > 1 is possible; any highest vector generates a copy of the
  // irrep, so take the first kernel vector deterministically
  SparseVec hw;
  for (std::size_t c = 0; c < wl.size(); ++c) accumulate(hw, wl[c], kernel[0][c]);
  normalize_content(hw);
  rho->highest_ = hw;

  // cyclic span under the lowering operators
  std::vector<LieElement> lowering;
  for (int q = 1; q <= h; ++q) {
    if (N % 2 == 0 && q == h) break;
    for (int l = q + 1; l <= N - q; ++l) lowering.push_back(opposite_generator(N, q, l));
  }
  add_to_tracker(hw);
  std::queue<int> work;
  work.push(0);
  while (!work.empty()) {
    int b = work.front();
    work.pop();
    for (const auto& low : lowering) {
      SparseVec img = rho->apply_lie(low, rho->basis_[b]);
      if (img.empty()) continue;
      // keep basis vectors weight-homogeneous: each weight component of a
      // module vector is again in the module
      std::map<std::vector<long>, SparseVec> parts;
      for (const auto& [key, c] : img) parts[rho->weight_of(key)].emplace(key, c);
      for (auto& [w, part] : parts) {
        normalize_content(part);
        if (add_to_tracker(part)) work.push(static_cast<int>(rho->basis_.size()) - 1);
      }
    }
  }
  return rho;
}

std::shared_ptr<const Irrep> build_irrep(int N, const Weight& lambda) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::vector<long>>, std::shared_ptr<const Irrep>> cache;
  std::pair<int, std::vector<long>> key{N, lambda.entries};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  // construct outside the lock: Irrep::build recurses into build_irrep for
  // mirrored weights
  auto built = Irrep::build(N, lambda);
  std::lock_guard<std::mutex> lock(mutex);
  auto& entry = cache[key];
  if (!entry) entry = built;
  return entry;
}

Mat act(const UElement& x, const Irrep& rho) {
  Mat m(rho.dim(), std::vector<GaussianRational>(rho.dim()));
  for (int col = 0; col < rho.dim(); ++col) {
    auto c = rho.coords(rho.apply_element(x, rho.basis_vectors()[col]));
    for (int r = 0; r < rho.dim(); ++r) m[r][col] = c[r];
  }
  return m;
}

std::pair<GaussianRational, bool> central_scalar(const UElement& x, const Irrep& rho) {
  const SparseVec& hw = rho.highest_vector();
  SparseVec y = rho.apply_element(x, hw);
  GaussianRational c;
  if (!y.empty()) {
    auto it = y.find(hw.begin()->first);
    if (it == y.end()) {
      auto m0 = rho.coords(rho.apply_element(x, rho.basis_vectors()[0]));
      return {m0[0], false};
    }
    c = it->second / hw.begin()->second;
  }
  auto is_scaled = [&rho, &c](const SparseVec& v, const SparseVec& img) {
    SparseVec want = img;
    for (const auto& [k, val] : v) accumulate(want, k, -c * val);
    return want.empty();
  };
  if (!is_scaled(hw, y)) {
    auto m0 = rho.coords(rho.apply_element(x, rho.basis_vectors()[0]));
    return {m0[0], false};
  }
  for (const auto& b : rho.basis_vectors()) {
    SparseVec img = rho.apply_element(x, b);
    if (!is_scaled(b, img)) {
      auto m0 = rho.coords(rho.apply_element(x, rho.basis_vectors()[0]));
      return {m0[0], false};
    }
  }
  return {c, true};
}

FixedVectorData fixed_subspace(const Irrep& rho, int k) {
  int N = rho.N();
  if (k < 1 || k >= N) throw std::domain_error("fixed_subspace: need 1 <= k < N");
  RowReducer reducer(rho.dim());
  auto feed_matrix_rows = [&](const Mat& m, bool subtract_identity) {
    for (int r = 0; r < rho.dim(); ++r) {
      SparseRow row;
      for (int c = 0; c < rho.dim(); ++c) {
        GaussianRational v = m[r][c];
        if (subtract_identity && r == c) v -= GaussianRational(1);
        if (!v.is_zero()) row.emplace(c, v);
      }
      if (!row.empty()) reducer.add_row(std::move(row));
      if (reducer.full_rank()) return;
    }
  };
  auto block_matrix = [&](const LieElement& x) {
    Mat m(rho.dim(), std::vector<GaussianRational>(rho.dim()));
    for (int col = 0; col < rho.dim(); ++col) {
      auto c = rho.coords(rho.apply_lie(x, rho.basis_vectors()[col]));
      for (int r = 0; r < rho.dim(); ++r) m[r][col] = c[r];
    }
    return m;
  };
  for (int i = 1; i <= N && !reducer.full_rank(); ++i)
    for (int j = i + 1; j <= N && !reducer.full_rank(); ++j) {
      bool first_block = (j <= N - k);
      bool second_block = (i >= N - k + 1);
      if (!first_block && !second_block) continue;
      feed_matrix_rows(block_matrix(LieElement::generator(N, i, j)), false);
    }
  if (!reducer.full_rank()) {
    // component-group representative: flip coordinates N-k and N-k+1
    Mat flip(N, std::vector<GaussianRational>(N));
    for (int i = 1; i <= N; ++i)
      flip[i - 1][i - 1] = GaussianRational((i == N - k || i == N - k + 1) ? -1 : 1);
    Mat f(rho.dim(), std::vector<GaussianRational>(rho.dim()));
    for (int col = 0; col < rho.dim(); ++col) {
      auto c = rho.coords(rho.apply_group(flip, rho.basis_vectors()[col]));
      for (int r = 0; r < rho.dim(); ++r) f[r][col] = c[r];
    }
    feed_matrix_rows(f, true);
  }
  FixedVectorData out;
  out.k = k;
  out.basis = reducer.kernel_basis();
  if (out.dim() > 1)
    throw std::runtime_error("fixed_subspace: multiplicity-one violated");
  for (const auto& v : out.basis) {
    GaussianRational n = rho.inner(rho.from_coords(v), rho.from_coords(v));
    if (!n.is_real()) throw std::logic_error("fixed_subspace: norm is not real");
    out.norms_sq.push_back(n.re());
  }
  return out;
}

SparseVec averaged_vector(const Irrep& rho, int k) {
  FixedVectorData f = fixed_subspace(rho, k);
  if (f.dim() != 1)
    throw std::runtime_error("averaged_vector: fixed subspace is not one-dimensional");
  SparseVec e = rho.from_coords(f.basis[0]);
  GaussianRational c = rho.inner(rho.highest_vector(), e) / rho.inner(e, e);
  if (c.is_zero())
    throw std::runtime_error("averaged_vector: highest vector projects to zero");
  SparseVec out;
  for (const auto& [key, v] : e) out.emplace(key, c * v);
  return out;
}

PairingData pair_fixed(const Irrep& rho, int k1, int k2) {
  FixedVectorData f1 = fixed_subspace(rho, k1);
  if (f1.dim() == 0) throw std::runtime_error("pair_fixed: empty fixed subspace for k1");
  FixedVectorData f2 = fixed_subspace(rho, k2);
  if (f2.dim() == 0) throw std::runtime_error("pair_fixed: empty fixed subspace for k2");
  SparseVec u1 = averaged_vector(rho, k1);
  SparseVec u2 = averaged_vector(rho, k2);
  PairingData out;
  out.inner = rho.inner(u1, u2);
  GaussianRational n1 = rho.inner(u1, u1), n2 = rho.inner(u2, u2);
  out.norm1_sq = n1.re();
  out.norm2_sq = n2.re();
  return out;
}

}  // namespace pfrad
