/**
 * linalg.cpp — exact Gauss–Jordan routines over Fq.
 */

#include "hecke/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace hecke {

Mat zeros(int rows, int cols, uint32_t p, uint32_t e) {
  Mat m(rows, cols);
  Fq z = Fq::make(p, e, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = z;
  return m;
}

Mat identity(int n, uint32_t p, uint32_t e) {
  Mat m = zeros(n, n, p, e);
  Fq one = Fq::make(p, e, 1);
  for (int i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

Mat mat_from(const std::vector<std::vector<long long>>& rows, uint32_t p,
             uint32_t e) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw std::invalid_argument("mat_from: ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = Fq::make(p, e, rows[i][j]);
  }
  return m;
}

bool mat_eq(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool is_zero_mat(const Mat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

std::string to_string(const Mat& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < a.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j).str();
  }
  os << "]";
  return os.str();
}

std::vector<int> row_reduce(Mat& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    // deterministic pivot: first row at or below `row` with nonzero entry
    int piv = -1;
    for (int i = row; i < a.rows(); ++i)
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) a.row(piv).swap(a.row(row));
    Fq inv = a(row, col).inverse();
    for (int j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      Fq f = a(i, col);
      for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Mat a) { return static_cast<int>(row_reduce(a).size()); }

Mat row_space_basis(const Mat& a) {
  Mat r = a;
  int rk = static_cast<int>(row_reduce(r).size());
  return r.topRows(rk);
}

Mat left_kernel(const Mat& a) {
  // x * a = 0  <=>  a^T * x^T = 0; reuse the column-kernel from rank_solve.
  Mat at = a.transpose();
  RankSolve rs = rank_solve(at, zeros(static_cast<int>(at.rows()), 0,
                                      at.size() ? at(0, 0).p() : 2,
                                      at.size() ? at(0, 0).e() : 1));
  return rs.kernel.transpose();
}

RankSolve rank_solve(const Mat& a, const Mat& b) {
  if (b.rows() != a.rows() && b.cols() != 0)
    throw std::invalid_argument("rank_solve: shape mismatch");
  const uint32_t p = a.size() ? a(0, 0).p() : (b.size() ? b(0, 0).p() : 2);
  const uint32_t e = a.size() ? a(0, 0).e() : (b.size() ? b(0, 0).e() : 1);
  const int n = static_cast<int>(a.cols());
  const int nb = static_cast<int>(b.cols());

  Mat aug(a.rows(), n + nb);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (int j = 0; j < nb; ++j) aug(i, n + j) = b(i, j);
  }
  // eliminate using only the first n columns as pivot candidates
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < n && row < aug.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < aug.rows(); ++i)
      if (!aug(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) aug.row(piv).swap(aug.row(row));
    Fq inv = aug(row, col).inverse();
    for (int j = 0; j < aug.cols(); ++j) aug(row, j) *= inv;
    for (int i = 0; i < aug.rows(); ++i) {
      if (i == row || aug(i, col).is_zero()) continue;
      Fq f = aug(i, col);
      for (int j = 0; j < aug.cols(); ++j) aug(i, j) -= f * aug(row, j);
    }
    pivots.push_back(col);
    ++row;
  }

  RankSolve out;
  out.rank = static_cast<int>(pivots.size());
  out.consistent = true;
  for (int i = out.rank; i < aug.rows() && out.consistent; ++i)
    for (int j = 0; j < nb; ++j)
      if (!aug(i, n + j).is_zero()) {
        out.consistent = false;
        break;
      }

  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;

  if (out.consistent) {
    out.particular = zeros(n, nb, p, e);
    for (int k = 0; k < out.rank; ++k)
      for (int j = 0; j < nb; ++j) out.particular(pivots[k], j) = aug(k, n + j);
  }

  // kernel basis: one column per free column
  int free_count = n - out.rank;
  out.kernel = zeros(n, free_count, p, e);
  int kcol = 0;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    out.kernel(c, kcol) = Fq::make(p, e, 1);
    for (int k = 0; k < out.rank; ++k)
      out.kernel(pivots[k], kcol) = -aug(k, c);
    ++kcol;
  }
  return out;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  const uint32_t p = a.size() ? a(0, 0).p() : 2;
  const uint32_t e = a.size() ? a(0, 0).e() : 1;
  RankSolve rs = rank_solve(a, identity(static_cast<int>(a.rows()), p, e));
  if (rs.rank != a.rows() || !rs.consistent)
    throw std::domain_error("inverse: singular matrix");
  return rs.particular;
}

Mat coords_in_row_basis(const Mat& basis, const Mat& vecs) {
  // c * basis = vecs  <=>  basis^T * c^T = vecs^T
  RankSolve rs = rank_solve(basis.transpose(), vecs.transpose());
  if (!rs.consistent)
    throw std::domain_error("coords_in_row_basis: vector outside span");
  return rs.particular.transpose();
}

EventualImage eventual_image(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("eventual_image: not square");
  const int n = static_cast<int>(a.rows());
  const uint32_t p = a.size() ? a(0, 0).p() : 2;
  const uint32_t e = a.size() ? a(0, 0).e() : 1;

  Mat power = identity(n, p, e);
  for (int i = 0; i < n; ++i) power = power * a;
  EventualImage out;
  out.basis = row_space_basis(power);
  Mat next = row_space_basis(power * a);
  out.stabilized =
      next.rows() == out.basis.rows() && mat_eq(next, out.basis);

  const int r = static_cast<int>(out.basis.rows());
  if (r == 0) {
    out.restricted = zeros(0, 0, p, e);
    out.invertible_on_image = true;  // vacuously
    return out;
  }
  Mat mapped = out.basis * a;  // rows stay in E once stabilized
  out.restricted = coords_in_row_basis(out.basis, mapped);
  out.invertible_on_image = rank(out.restricted) == r;
  return out;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  const uint32_t p = a.size() ? a(0, 0).p() : (b.size() ? b(0, 0).p() : 2);
  const uint32_t e = a.size() ? a(0, 0).e() : (b.size() ? b(0, 0).e() : 1);
  Mat m = zeros(static_cast<int>(a.rows() + b.rows()),
                static_cast<int>(a.cols() + b.cols()), p, e);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      m(static_cast<int>(a.rows()) + i, static_cast<int>(a.cols()) + j) =
          b(i, j);
  return m;
}

}  // namespace hecke
