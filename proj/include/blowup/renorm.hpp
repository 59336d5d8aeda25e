#pragma once

#include <optional>

#include <Eigen/Dense>

#include "blowup/models.hpp"
#include "blowup/spectral_field.hpp"

namespace blowup {

using Matrix2 = Eigen::Matrix2d;
using Vector2 = Eigen::Vector2d;

inline constexpr double kDefaultCondMax = 1e12;

/// Rates of the resolved moments E1 = sum_F |u_k|^2 and E2 = sum_F |u_k|^4
/// induced by a right-hand side r: (sum 2 Re(r_k conj u_k),
/// sum 4 Re(r_k conj u_k) |u_k|^2) over the resolved modes.
Vector2 moment_rates(const SpectralField& r, const SpectralField& u, ModeRange resolved);

/// B_kj = d(dE_k/dt)/d a1_j, from the reduced-model terms evaluated on the
/// resolved modes of the full-system state u.
Matrix2 compute_B(const SpectralField& u, double t, const ModelSpec& model, const Partition& partition);

/// A_kj = d(dE_k/dt)/d a0_j, from the full-system terms (memory term over
/// F u G and I); moments still over F.
Matrix2 compute_A(const SpectralField& u, double t, const ModelSpec& model, const Partition& partition);

enum class SolveStatus {
  solved,           ///< direct solve, cond(B) <= cond_max
  ill_conditioned,  ///< minimum-norm least-squares fallback
  pre_transfer,     ///< det B == 0; convention a1 = (1, 0)
};

struct CoefficientSolve {
  Vector2 a1 = Vector2(1.0, 0.0);
  SolveStatus status = SolveStatus::pre_transfer;
  double condition = 0.0;
};

/// Reduced-model coefficients reproducing the full-system moment rates,
/// sum_j B_kj a1_j = e_k.
CoefficientSolve solve_coefficients(const Matrix2& B, const Vector2& e, double cond_max = kDefaultCondMax);

/// M = A B^{-1}; empty when B is singular or cond(B) > cond_max.
std::optional<Matrix2> compute_M(const Matrix2& A, const Matrix2& B, double cond_max = kDefaultCondMax);

double condition_number(const Matrix2& m);

struct RenormSnapshot {
  double time = 0.0;
  Matrix2 A = Matrix2::Zero();
  Matrix2 B = Matrix2::Zero();
  double detA = 0.0;
  double detB = 0.0;
  std::optional<Matrix2> M;
  Vector2 e = Vector2::Zero();  ///< full-system rates, A a0
  std::optional<CoefficientSolve> a1_solved;
};

/// All monitor quantities at one instant.
RenormSnapshot take_snapshot(const SpectralField& u, double t, const ModelSpec& model,
                             const Partition& partition, double cond_max = kDefaultCondMax);

/// The moment range actually summed: F, minus its unpaired mode for real fields.
ModeRange moment_range(const ModelSpec& model, const Partition& partition);

}  // namespace blowup
