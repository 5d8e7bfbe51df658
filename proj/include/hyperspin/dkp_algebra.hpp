#pragma once

// Duffin-Kemmer matrices for the vector (10-component) representation in
// the cyclic basis, where the rotation generator J^{12} is diagonal.
//
// Component ordering follows the 1-3-3-3 split (Phi0, Phi, E, H).

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace hyperspin::dkp {

using Complex = std::complex<double>;
using Row3 = Eigen::Matrix<Complex, 1, 3>;
using Mat3 = Eigen::Matrix<Complex, 3, 3>;
using Mat10 = Eigen::Matrix<Complex, 10, 10>;

struct SpinBlocks {
  std::array<Row3, 3> e_row;  ///< e_1, e_2, e_3
  std::array<Mat3, 3> tau;    ///< tau_1, tau_2, tau_3 (tau_3 = s_3)
};

struct BetaMatrices {
  std::array<Mat10, 4> beta;  ///< indexed by tetrad label 0..3
};

SpinBlocks build_spin_blocks();

/// Assembles the four 10x10 matrices. The lower-left block of beta^i uses
/// the conjugate transpose of e_i.
BetaMatrices build_beta_matrices(const SpinBlocks& blocks);

/// J^{12} = beta^1 beta^2 - beta^2 beta^1.
Mat10 generator_J12(const BetaMatrices& b);

/// block-diag(0, tau_3, tau_3, tau_3).
Mat10 spin_projection_S3(const SpinBlocks& blocks);

/// Minkowski metric diag(+,-,-,-).
constexpr double metric(int a, int b) { return a != b ? 0.0 : (a == 0 ? 1.0 : -1.0); }

struct AlgebraReport {
  double trilinear_max_error = 0.0;  ///< over all 64 (a,b,c) triples
  double j12_max_error = 0.0;        ///< |J12 + i S3| entrywise
  int beta0_nonzeros = 0;
};

/// Max-norm defect of beta^a beta^b beta^c + beta^c beta^b beta^a
///   - g^{ab} beta^c - g^{cb} beta^a over all 64 index triples.
double trilinear_defect(const BetaMatrices& b);

AlgebraReport verify_algebra();

}  // namespace hyperspin::dkp
