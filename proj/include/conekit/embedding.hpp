// The sp(2,R) ~ so(3,2) embedding inside sl(2, H_R): the split-quaternion
// basis, the matrix identity for 2(X dX - X) and the B/C dictionary, with
// numerical spot-checks through the Fourier substitution
// x_j -> -i d/dxi_j, d/dx_j -> -i xi_j.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "conekit/ktype.hpp"

namespace conekit::ktype {

using Mat2 = Eigen::Matrix2cd;

struct SplitBasisElement {
  std::string name;  // e0, e~1, e~2, e3
  Mat2 matrix;
  int coordinate;  // 1-based index of the coordinate it multiplies in X
};

const std::vector<SplitBasisElement>& split_basis();
// X = x1 e0 + x3 e~1 + x4 e~2 + x2 e3.
Mat2 split_matrix(const Vector4<double>& x);

struct MatrixIdentityCheck {
  Mat2 lhs;
  Mat2 rhs;
  double residual = 0.0;
};

// 2(X d(X phi) - X phi) with (d)_{ij} = d/dz_{ji}, against the expansion
// sum_a e_a (-eps_c N(X) d_c + 2 x_c deg) phi.
MatrixIdentityCheck x_dx_identity(const Jet& phi, const Vector4<double>& x);

struct EmbeddingEntry {
  char block;         // 'B' (upper right) or 'C' (lower left)
  std::string basis;  // which split basis element is chosen
  int j;              // operator index
  cplx coefficient;   // B: coefficient * xi_j ; C: coefficient * P_j(-1)
};

// The static table: B = e0, e~1, e~2, e3 give i xi_1, i xi_3, i xi_4, i xi_2;
// C = e0, e~1, e~2, e3 give -i P_1(-1), -i P_3(-1), -i P_4(-1), i P_2(-1).
std::vector<EmbeddingEntry> embedding_dictionary();

struct EmbeddingSpotCheck {
  cplx predicted;  // from the matrix action and the Fourier substitution
  cplx table;      // from the dictionary entry
};

// f is supplied through its jet at a point; the C block needs second
// derivatives of xi_k f only.
EmbeddingSpotCheck embedding_spot_check(const EmbeddingEntry& e, const std::function<Jet(const Vector4<double>&)>& f,
                                        const Vector4<double>& xi);

}  // namespace conekit::ktype
