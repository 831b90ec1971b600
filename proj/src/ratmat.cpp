#include "pfrad/ratmat.hpp"

#include <stdexcept>

namespace pfrad {

Mat mat_identity(int n) {
  Mat m(n, std::vector<GaussianRational>(n));
  for (int i = 0; i < n; ++i) m[i][i] = GaussianRational(1);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int m = static_cast<int>(b[0].size());
  if (static_cast<int>(a[0].size()) != k) throw std::invalid_argument("mat_mul: shape mismatch");
  Mat c(n, std::vector<GaussianRational>(m));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j) {
        if (b[t][j].is_zero()) continue;
        c[i][j] += a[i][t] * b[t][j];
      }
    }
  return c;
}

Mat mat_transpose(const Mat& a) {
  if (a.empty()) return {};
  int n = static_cast<int>(a.size());
  int m = static_cast<int>(a[0].size());
  Mat t(m, std::vector<GaussianRational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

GaussianRational mat_det(Mat a) {
  int n = static_cast<int>(a.size());
  GaussianRational det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!a[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return GaussianRational(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    GaussianRational inv = GaussianRational(1) / a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      GaussianRational f = a[r][c] * inv;
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

std::optional<Mat> mat_inverse(Mat a) {
  int n = static_cast<int>(a.size());
  Mat inv = mat_identity(n);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!a[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    GaussianRational piv = GaussianRational(1) / a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] *= piv;
      inv[c][j] *= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      GaussianRational f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

bool RowReducer::add_row(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  int piv = row.begin()->first;
  GaussianRational inv = GaussianRational(1) / row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  // back-substitute into existing rows so stored rows stay fully reduced
  for (auto& r : rows_) {
    auto it = r.find(piv);
    if (it == r.end()) continue;
    GaussianRational f = it->second;
    r.erase(it);
    for (const auto& [c, v] : row) {
      if (c == piv) continue;
      auto jt = r.find(c);
      if (jt == r.end()) {
        GaussianRational nv = -f * v;
        if (!nv.is_zero()) r.emplace(c, std::move(nv));
      } else {
        jt->second -= f * v;
        if (jt->second.is_zero()) r.erase(jt);
      }
    }
  }
  pivot_to_row_.emplace(piv, static_cast<int>(rows_.size()));
  rows_.push_back(std::move(row));
  return true;
}

SparseRow RowReducer::reduce(SparseRow v) const {
  // Stored rows are fully back-substituted, so eliminating a pivot column only
  // introduces non-pivot columns; one forward pass suffices.
  for (auto it = v.begin(); it != v.end();) {
    auto p = pivot_to_row_.find(it->first);
    if (p == pivot_to_row_.end()) {
      ++it;
      continue;
    }
    const SparseRow& r = rows_[p->second];
    GaussianRational f = it->second;
    int pcol = it->first;
    v.erase(it);
    for (const auto& [c, w] : r) {
      if (c == pcol) continue;
      auto jt = v.find(c);
      if (jt == v.end()) {
        GaussianRational nv = -f * w;
        if (!nv.is_zero()) v.emplace(c, std::move(nv));
      } else {
        jt->second -= f * w;
        if (jt->second.is_zero()) v.erase(jt);
      }
    }
    it = v.upper_bound(pcol);
  }
  return v;
}

std::vector<std::vector<GaussianRational>> RowReducer::kernel_basis() const {
  std::vector<std::vector<GaussianRational>> basis;
  for (int c = 0; c < cols_; ++c) {
    if (pivot_to_row_.count(c)) continue;
    std::vector<GaussianRational> vec(cols_);
    vec[c] = GaussianRational(1);
    for (const auto& [piv, ri] : pivot_to_row_) {
      auto it = rows_[ri].find(c);
      if (it != rows_[ri].end()) vec[piv] = -it->second;
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

}  // namespace pfrad
