#include "conekit/embedding.hpp"

#include <stdexcept>

namespace conekit::ktype {

namespace {
const cplx I(0.0, 1.0);

Mat2 mat(cplx a, cplx b, cplx c, cplx d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

// d = sum_k E_k d/dx_k with (d)_{ij} = d/dz_{ji}.
const std::array<Mat2, 4>& derivative_frame() {
  static const std::array<Mat2, 4> E = {mat(0.5, 0, 0, 0.5), mat(0.5 * I, 0, 0, -0.5 * I), mat(0, 0.5, 0.5, 0),
                                        mat(0, 0.5 * I, -0.5 * I, 0)};
  return E;
}

const SplitBasisElement& basis_by_name(const std::string& name) {
  for (const auto& b : split_basis())
    if (b.name == name) return b;
  throw std::invalid_argument("unknown split basis element " + name);
}
}  // namespace

const std::vector<SplitBasisElement>& split_basis() {
  static const std::vector<SplitBasisElement> basis = {
      {"e0", Mat2::Identity(), 1},
      {"e~1", mat(0, 1, 1, 0), 3},
      {"e~2", mat(0, I, -I, 0), 4},
      {"e3", mat(-I, 0, 0, I), 2},
  };
  return basis;
}

Mat2 split_matrix(const Vector4<double>& x) {
  Mat2 X = Mat2::Zero();
  for (const auto& b : split_basis()) X += x[b.coordinate - 1] * b.matrix;
  return X;
}

MatrixIdentityCheck x_dx_identity(const Jet& phi, const Vector4<double>& x) {
  const Mat2 X = split_matrix(x);
  // G_{ki} = d phi / d z_{ki} = (d phi)_{ik}
  Mat2 dphi = Mat2::Zero();
  for (int k = 0; k < 4; ++k) dphi += phi.g[k] * derivative_frame()[k];
  const Mat2 G = dphi.transpose();
  // d(X phi) = 2 phi Id + G^T X
  MatrixIdentityCheck out;
  out.lhs = 2.0 * (X * (2.0 * phi.v * Mat2::Identity() + G.transpose() * X) - X * phi.v);

  const double N = x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
  cplx deg = phi.v;
  for (int k = 0; k < 4; ++k) deg += x[k] * phi.g[k];
  out.rhs = Mat2::Zero();
  for (const auto& b : split_basis()) {
    const int c = b.coordinate - 1;
    out.rhs += (-double(kEpsilon[c]) * N * phi.g[c] + 2.0 * x[c] * deg) * b.matrix;
  }
  out.residual = (out.lhs - out.rhs).cwiseAbs().maxCoeff();
  return out;
}

std::vector<EmbeddingEntry> embedding_dictionary() {
  return {
      {'B', "e0", 1, I}, {'B', "e~1", 3, I}, {'B', "e~2", 4, I}, {'B', "e3", 2, I},
      {'C', "e0", 1, -I}, {'C', "e~1", 3, -I}, {'C', "e~2", 4, -I}, {'C', "e3", 2, I},
  };
}

EmbeddingSpotCheck embedding_spot_check(const EmbeddingEntry& e, const std::function<Jet(const Vector4<double>&)>& f,
                                        const Vector4<double>& xi) {
  const Mat2& C = basis_by_name(e.basis).matrix;
  const Jet F = f(xi);
  EmbeddingSpotCheck out;
  if (e.block == 'B') {
    // [[0, B], [0, 0]] acts by -tr(B d); d/dx_k -> -i xi_k.
    for (int k = 0; k < 4; ++k) out.predicted += I * (C * derivative_frame()[k]).trace() * xi[k] * F.v;
    out.table = e.coefficient * xi[e.j - 1] * F.v;
    return out;
  }
  if (e.block != 'C') throw std::invalid_argument("embedding entry block must be B or C");
  // [[0, 0], [C, 0]] acts by tr(C D)/2 with D = sum_a e_a D_a the right side of
  // the matrix identity. Under the substitution
  //   x_m^2 d_c -> i d_m^2 (xi_c f),  x_c x_k d_k -> i d_c d_k (xi_k f),  x_c -> -i d_c f.
  std::array<Jet, 4> xf;
  for (int k = 0; k < 4; ++k) xf[k] = Jet::coordinate(xi, k) * F;
  for (const auto& b : split_basis()) {
    const cplx weight = 0.5 * (C * b.matrix).trace();
    if (std::abs(weight) == 0.0) continue;
    const int c = b.coordinate - 1;
    cplx Dhat = 0.0;
    for (int m = 0; m < 4; ++m) Dhat += -double(kEpsilon[c]) * I * double(kEpsilon[m]) * xf[c].h[m][m];
    for (int k = 0; k < 4; ++k) Dhat += 2.0 * I * xf[k].h[c][k];
    Dhat += -2.0 * I * F.g[c];
    out.predicted += weight * Dhat;
  }
  out.table = e.coefficient * ambient_P(e.j, F, xi, 1);
  return out;
}

}  // namespace conekit::ktype
