#include "blowup/renorm.hpp"

#include <cmath>

#include "blowup/kernels.hpp"
#include "blowup/spectral.hpp"

namespace blowup {

ModeRange moment_range(const ModelSpec& model, const Partition& partition) {
  return model.conjugate_symmetric() ? partition.resolved.paired() : partition.resolved;
}

Vector2 moment_rates(const SpectralField& r, const SpectralField& u, ModeRange resolved) {
  const SpectralField rr = restrict_to(r, resolved);
  const SpectralField uu = restrict_to(u, resolved);
  const kernels::Pair p = kernels::active().rate_pair(rr.coeffs(), uu.coeffs());
  return {p.first, p.second};
}

namespace {

Matrix2 rate_matrix(const SpectralField& u, double t, const ModelSpec& model, const Partition& partition,
                    Level level) {
  const ModeRange f = moment_range(model, partition);
  const SpectralField state = level == Level::reduced ? restrict_to(u, partition.resolved) : u;
  Matrix2 m;
  for (int j = 0; j < ModelSpec::kTerms; ++j)
    m.col(j) = moment_rates(evaluate_term(model, j, state, t, partition, level), u, f);
  return m;
}

}  // namespace

Matrix2 compute_B(const SpectralField& u, double t, const ModelSpec& model, const Partition& partition) {
  return rate_matrix(u, t, model, partition, Level::reduced);
}

Matrix2 compute_A(const SpectralField& u, double t, const ModelSpec& model, const Partition& partition) {
  return rate_matrix(u, t, model, partition, Level::full);
}

double condition_number(const Matrix2& m) {
  const Eigen::JacobiSVD<Matrix2> svd(m);
  const auto s = svd.singularValues();
  if (s(1) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(1);
}

CoefficientSolve solve_coefficients(const Matrix2& B, const Vector2& e, double cond_max) {
  CoefficientSolve out;
  if (B.determinant() == 0.0) {
    out.condition = std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::JacobiSVD<Matrix2> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.condition = svd.singularValues()(1) > 0.0 ? svd.singularValues()(0) / svd.singularValues()(1)
                                                : std::numeric_limits<double>::infinity();
  if (out.condition <= cond_max) {
    out.a1 = B.fullPivLu().solve(e);
    out.status = SolveStatus::solved;
  } else {
    svd.setThreshold(1.0 / cond_max);
    out.a1 = svd.solve(e);
    out.status = SolveStatus::ill_conditioned;
  }
  return out;
}

std::optional<Matrix2> compute_M(const Matrix2& A, const Matrix2& B, double cond_max) {
  if (B.determinant() == 0.0 || condition_number(B) > cond_max) return std::nullopt;
  return Matrix2(B.transpose().fullPivLu().solve(A.transpose()).transpose());
}

RenormSnapshot take_snapshot(const SpectralField& u, double t, const ModelSpec& model,
                             const Partition& partition, double cond_max) {
  RenormSnapshot s;
  s.time = t;
  s.B = compute_B(u, t, model, partition);
  s.A = compute_A(u, t, model, partition);
  s.detB = s.B.determinant();
  s.detA = s.A.determinant();
  s.e = s.A * Vector2(model.a0[0], model.a0[1]);
  s.a1_solved = solve_coefficients(s.B, s.e, cond_max);
  s.M = compute_M(s.A, s.B, cond_max);
  return s;
}

}  // namespace blowup
