#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fibrum/base.hpp"

// Exact integer linear algebra: Smith/Hermite forms and lattice solves.
// Sizes here are small (a few hundred rows at most), so the implementation
// favors clarity; entries are guarded against int64 overflow.

namespace fibrum::zlin {

using Mat = std::vector<std::vector<long long>>;  // row-major

Mat identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
std::vector<long long> mat_vec(const Mat& a, const std::vector<long long>& v);

struct SmithResult {
  Mat d;          // diagonal form, same shape as input
  Mat left;       // U with U*A*V = D (empty when not requested)
  Mat right;      // V
  int rank = 0;
  std::vector<long long> diag() const;
};

SmithResult smith_normal_form(Mat a, bool want_left, bool want_right);

/// Basis of the lattice spanned by the given columns (m x t), returned as an
/// m x k column-style Hermite basis.
Mat lattice_column_basis(const Mat& columns);

/// Exact solution x of A x = b over the integers, if one exists.
std::optional<std::vector<long long>> solve_integer(const Mat& a,
                                                    const std::vector<long long>& b);

/// Presentation of a finite abelian quotient L1/L2, where L2 <= L1 are
/// lattices in Z^m containing d*Z^m. `gens1`/`gens2` are generating columns.
struct QuotientPresentation {
  Mat basis1;                        // column basis of L1 (m x k)
  std::vector<long long> factors;    // invariant factors > 1, divisibility chain
  // Maps a vector of L1 to its coordinates in the quotient normal form.
  // Throws InternalError if v is not in L1.
  std::vector<long long> normal_form(const std::vector<long long>& v) const;

  Mat proj_;                         // rows of U corresponding to factors
  std::vector<long long> all_diag_;  // full SNF diagonal (for membership tests)
  Mat u_full_;                       // full U of the relation SNF
};

QuotientPresentation quotient_presentation(const Mat& gens1, const Mat& gens2);

}  // namespace fibrum::zlin
