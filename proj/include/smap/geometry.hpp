#pragma once

#include <vector>

#include "smap/field.hpp"

namespace smap {

/// Field of unit vectors s(x) in S^2, together with the base point Q that
/// s approaches away from the perturbation.
class SphereField {
 public:
  static constexpr double kUnitTolerance = 1e-10;

  /// Throws std::invalid_argument if some |s(x)| or |Q| differs from one
  /// by more than kUnitTolerance.
  SphereField(VectorField3 s, Vec3 base);

  const Grid& grid() const noexcept { return s_.grid(); }
  const VectorField3& values() const noexcept { return s_; }
  const Vec3& base() const noexcept { return base_; }
  const Vec3& operator[](std::size_t i) const noexcept { return s_[i]; }
  std::size_t size() const noexcept { return s_.size(); }

 private:
  VectorField3 s_;
  Vec3 base_;
};

/// Orthonormal frame (s, v, w) with w = s x v.
class Frame {
 public:
  static constexpr double kTolerance = 1e-8;

  /// Validates orthonormality and w = s x v within kTolerance.
  Frame(SphereField s, VectorField3 v, VectorField3 w);

  const Grid& grid() const noexcept { return s_.grid(); }
  const SphereField& s() const noexcept { return s_; }
  const VectorField3& v() const noexcept { return v_; }
  const VectorField3& w() const noexcept { return w_; }

 private:
  SphereField s_;
  VectorField3 v_;
  VectorField3 w_;
};

/// Largest pointwise violation among |s.v|, |s.w|, |v.w|, ||v|-1|, ||w|-1|
/// and |w - s x v|.
double frame_defect(const VectorField3& s, const VectorField3& v, const VectorField3& w);

/// Real connection coefficients A_1..A_d.
class Connection {
 public:
  explicit Connection(std::vector<ScalarField> components);

  int dim() const noexcept { return static_cast<int>(a_.size()); }
  const Grid& grid() const noexcept { return a_.front().grid(); }
  const ScalarField& operator[](int m) const { return a_.at(m); }
  const std::vector<ScalarField>& components() const noexcept { return a_; }

 private:
  std::vector<ScalarField> a_;
};

/// sum_m d_m A_m (complex-valued; real up to Nyquist residue).
ScalarField divergence(const Connection& a);

/// N[u1, u2]: unit vector orthogonal to u2 in span{u1, u2}.
/// Throws FrameDegenerate outside |u1|, |u2| in (1/2, 2), |u1 . u2| < 2^-5.
Vec3 project_n(const Vec3& u1, const Vec3& u2);

/// First standard basis vector not parallel to q, Gram-Schmidt against q.
Vec3 default_transverse(const Vec3& q);

/// v(x) = N[qp, s(x)], w = s x v. Throws FrameDegenerate naming the worst
/// point when |s(x) . qp| >= 2^-5 somewhere.
Frame projection_frame(const SphereField& s, const Vec3& qp);
/// projection_frame with qp = default_transverse(s.base()).
Frame projection_frame(const SphereField& s);

struct SweepFrame {
  static constexpr double kSeamWarning = 1e-6;

  Frame frame;
  /// Largest |N[v(x_last), s(x_first)] - v(x_first)| over periodic seams.
  double seam_mismatch;
  bool seam_warning;
};

/// Axis-by-axis extension of a frame from the origin, each new point taking
/// v = N[v(previous), s(point)]. Requires |s(x) - s(y)| <= 2^-10 between grid
/// neighbours (including across the periodic seam); otherwise throws
/// FrameDegenerate.
SweepFrame sweep_frame(const SphereField& s);

/// A_m = (d_m v) . w.
Connection connection_of(const Frame& frame);

/// v' = cos(chi) v + sin(chi) w, w' = -sin(chi) v + cos(chi) w.
Frame rotate_frame(const Frame& frame, const ScalarField& chi);

struct CoulombGauge {
  Frame frame;
  Connection connection;
  ScalarField chi;
};

/// Rotates the frame by the zero-mean chi solving Laplace(chi) = -div A, so
/// that the returned connection A + grad chi is divergence-free.
CoulombGauge coulomb_fix(const Frame& frame);

/// s / |s| pointwise. Throws BlowupSuspected if some |s| is outside [1/2, 2].
SphereField renormalize(const VectorField3& s, const Vec3& base);

/// max_x ||s(x)| - 1|.
double unit_violation(const VectorField3& s);

}  // namespace smap
