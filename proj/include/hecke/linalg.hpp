/**
 * linalg.hpp — dense exact linear algebra over Fq.
 *
 * Storage and ring arithmetic are Eigen dense matrices templated on the Fq
 * scalar; everything that needs elimination (rank, solving, kernels,
 * eventual image) is a free function doing exact Gauss–Jordan with a
 * deterministic pivot rule (first nonzero entry, scanning rows in order,
 * columns left to right).  Floating-point style pivoting has no meaning in
 * a finite field, so none of Eigen's decompositions are used.
 *
 * Convention: modules in this library act on *row* vectors, x -> x * A.
 * Subspaces are therefore row spans, and the helpers below are phrased in
 * terms of row spaces and left kernels where that matters.
 */

#ifndef HECKE_LINALG_HPP
#define HECKE_LINALG_HPP

#include <Eigen/Core>

#include <string>
#include <vector>

#include "hecke/fq.hpp"

namespace Eigen {

template <>
struct NumTraits<hecke::Fq> : GenericNumTraits<hecke::Fq> {
  typedef hecke::Fq Real;
  typedef hecke::Fq NonInteger;
  typedef hecke::Fq Nested;
  typedef hecke::Fq Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline hecke::Fq epsilon() { return hecke::Fq(0); }
  static inline hecke::Fq dummy_precision() { return hecke::Fq(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace hecke {

using Mat = Eigen::Matrix<Fq, Eigen::Dynamic, Eigen::Dynamic>;

/// n x m all-zero matrix bound to F_{p^e}.
Mat zeros(int rows, int cols, uint32_t p, uint32_t e = 1);
/// n x n identity bound to F_{p^e}.
Mat identity(int n, uint32_t p, uint32_t e = 1);
/// Build from nested initializer data of ints, bound to F_{p^e}.
Mat mat_from(const std::vector<std::vector<long long>>& rows, uint32_t p,
             uint32_t e = 1);

bool mat_eq(const Mat& a, const Mat& b);
bool is_zero_mat(const Mat& a);
std::string to_string(const Mat& a);

/// Reduced row echelon form (in place); returns pivot column indices.
std::vector<int> row_reduce(Mat& a);

int rank(Mat a);

/// Basis of the row space as the rows of the returned matrix (RREF rows).
Mat row_space_basis(const Mat& a);

/// Basis of { x (row) : x * a = 0 }, one basis vector per row.
Mat left_kernel(const Mat& a);

/// Result of solving a * x = b for column vectors x (b may have many columns).
struct RankSolve {
  int rank = 0;
  bool consistent = false;
  Mat particular;  // one solution per column of b (valid iff consistent)
  Mat kernel;      // columns form a basis of { x : a * x = 0 }
};
RankSolve rank_solve(const Mat& a, const Mat& b);

/// Exact inverse; throws std::domain_error if singular.
Mat inverse(const Mat& a);

/// Express each row of `vecs` in the basis given by the rows of `basis`:
/// returns c with c * basis = vecs; throws if some row is outside the span.
Mat coords_in_row_basis(const Mat& basis, const Mat& vecs);

/// Stable image data of iterating a square matrix on row vectors.
struct EventualImage {
  Mat basis;       // r x n, rows span E = row-space of a^n
  Mat restricted;  // r x r, matrix of the action restricted to E
  bool invertible_on_image = false;
  bool stabilized = false;  // row-space(a^n) == row-space(a^{n+1})
};
EventualImage eventual_image(const Mat& a);

/// Block-diagonal direct sum.
Mat direct_sum(const Mat& a, const Mat& b);

}  // namespace hecke

#endif  // HECKE_LINALG_HPP
