#ifndef PFRAD_RATMAT_HPP
#define PFRAD_RATMAT_HPP

#include <map>
#include <optional>
#include <vector>

#include "pfrad/gaussian.hpp"

namespace pfrad {

using Mat = std::vector<std::vector<GaussianRational>>;
using SparseRow = std::map<int, GaussianRational>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
GaussianRational mat_det(Mat a);
std::optional<Mat> mat_inverse(Mat a);

/// Incremental exact Gaussian elimination over Q(i).
///
/// Rows are equations in `cols` variables; after feeding all rows,
/// kernel_basis() returns an exact basis of the solution space.
class RowReducer {
 public:
  explicit RowReducer(int cols) : cols_(cols) {}

  /// Reduces the row against the current pivots. Returns true if the row was
  /// independent (a new pivot was created).
  bool add_row(SparseRow row);

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  bool full_rank() const { return rank() == cols_; }

  std::vector<std::vector<GaussianRational>> kernel_basis() const;

  /// Reduces a copy of v against the pivots and returns the residual.
  SparseRow reduce(SparseRow v) const;

 private:
  int cols_;
  std::vector<SparseRow> rows_;        // each normalized so row[pivot] == 1
  std::map<int, int> pivot_to_row_;    // pivot column -> index in rows_
};

}  // namespace pfrad

#endif
