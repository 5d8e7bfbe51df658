#include "hyperspin/dkp_algebra.hpp"

#include <cmath>

namespace hyperspin::dkp {

namespace {
constexpr Complex I{0.0, 1.0};

// Offsets of the Phi0, Phi, E, H blocks inside the 10-vector.
constexpr int kPhi0 = 0;
constexpr int kPhi = 1;
constexpr int kE = 4;
constexpr int kH = 7;
}  // namespace

SpinBlocks build_spin_blocks() {
  const double s = 1.0 / std::sqrt(2.0);
  SpinBlocks sb;
  sb.e_row[0] << -I * s, 0.0, I * s;
  sb.e_row[1] << s, 0.0, s;
  sb.e_row[2] << 0.0, I, 0.0;

  sb.tau[0] << 0.0, s, 0.0,
               s, 0.0, s,
               0.0, s, 0.0;
  sb.tau[1] << 0.0, -I * s, 0.0,
               I * s, 0.0, -I * s,
               0.0, I * s, 0.0;
  sb.tau[2] << 1.0, 0.0, 0.0,
               0.0, 0.0, 0.0,
               0.0, 0.0, -1.0;
  return sb;
}

BetaMatrices build_beta_matrices(const SpinBlocks& blocks) {
  BetaMatrices b;
  for (auto& m : b.beta) m.setZero();

  b.beta[0].block<3, 3>(kPhi, kE) = I * Mat3::Identity();
  b.beta[0].block<3, 3>(kE, kPhi) = -I * Mat3::Identity();

  for (int i = 0; i < 3; ++i) {
    Mat10& bi = b.beta[i + 1];
    bi.block<1, 3>(kPhi0, kE) = blocks.e_row[i];
    bi.block<3, 3>(kPhi, kH) = blocks.tau[i];
    bi.block<3, 1>(kE, kPhi0) = -blocks.e_row[i].adjoint();
    bi.block<3, 3>(kH, kPhi) = -blocks.tau[i];
  }
  return b;
}

Mat10 generator_J12(const BetaMatrices& b) {
  return b.beta[1] * b.beta[2] - b.beta[2] * b.beta[1];
}

Mat10 spin_projection_S3(const SpinBlocks& blocks) {
  Mat10 s = Mat10::Zero();
  s.block<3, 3>(kPhi, kPhi) = blocks.tau[2];
  s.block<3, 3>(kE, kE) = blocks.tau[2];
  s.block<3, 3>(kH, kH) = blocks.tau[2];
  return s;
}

double trilinear_defect(const BetaMatrices& b) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int bb = 0; bb < 4; ++bb)
      for (int c = 0; c < 4; ++c) {
        const Mat10 lhs = b.beta[a] * b.beta[bb] * b.beta[c] + b.beta[c] * b.beta[bb] * b.beta[a];
        const Mat10 rhs = metric(a, bb) * b.beta[c] + metric(c, bb) * b.beta[a];
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  return worst;
}

AlgebraReport verify_algebra() {
  const SpinBlocks sb = build_spin_blocks();
  const BetaMatrices b = build_beta_matrices(sb);
  AlgebraReport rep;
  rep.trilinear_max_error = trilinear_defect(b);
  rep.j12_max_error = (generator_J12(b) + I * spin_projection_S3(sb)).cwiseAbs().maxCoeff();
  rep.beta0_nonzeros = static_cast<int>((b.beta[0].array().abs() > 0.0).count());
  return rep;
}

}  // namespace hyperspin::dkp
