#include "smap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smap/errors.hpp"
#include "smap/spectral.hpp"

namespace smap {
namespace {

constexpr double kProjectionBound = 1.0 / 32.0;     // 2^-5
constexpr double kOscillationBound = 1.0 / 1024.0;  // 2^-10

std::string describe_point(const Grid& grid, std::size_t flat) {
  std::ostringstream os;
  os << "(";
  for (int a = 0; a < grid.dim(); ++a) os << (a ? ", " : "") << grid.coordinate(flat, a);
  os << ")";
  return os.str();
}

}  // namespace

SphereField::SphereField(VectorField3 s, Vec3 base) : s_(std::move(s)), base_(base) {
  if (std::abs(norm(base_) - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("SphereField: base point is not a unit vector");
  }
  const double violation = unit_violation(s_);
  if (!(violation <= kUnitTolerance)) {
    std::ostringstream os;
    os << "SphereField: pointwise |s| deviates from 1 by " << violation;
    throw std::invalid_argument(os.str());
  }
}

double frame_defect(const VectorField3& s, const VectorField3& v, const VectorField3& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double terms[] = {std::abs(dot(s[i], v[i])),   std::abs(dot(s[i], w[i])),
                            std::abs(dot(v[i], w[i])),   std::abs(norm(v[i]) - 1.0),
                            std::abs(norm(w[i]) - 1.0),  norm(w[i] - cross(s[i], v[i]))};
    for (double t : terms) worst = std::max(worst, std::isnan(t) ? INFINITY : t);
  }
  return worst;
}

Frame::Frame(SphereField s, VectorField3 v, VectorField3 w)
    : s_(std::move(s)), v_(std::move(v)), w_(std::move(w)) {
  require_same_grid(s_.grid(), v_.grid(), "Frame");
  require_same_grid(s_.grid(), w_.grid(), "Frame");
  const double defect = frame_defect(s_.values(), v_, w_);
  if (!(defect <= kTolerance)) {
    std::ostringstream os;
    os << "Frame: orthonormality defect " << defect << " exceeds " << kTolerance;
    throw std::invalid_argument(os.str());
  }
}

Connection::Connection(std::vector<ScalarField> components) : a_(std::move(components)) {
  if (a_.empty()) throw std::invalid_argument("Connection: no components");
  if (static_cast<int>(a_.size()) != a_.front().grid().dim()) {
    throw std::invalid_argument("Connection: need one component per axis");
  }
  for (const auto& c : a_) require_same_grid(a_.front().grid(), c.grid(), "Connection");
}

ScalarField divergence(const Connection& a) {
  ScalarField div(a.grid());
  for (int m = 0; m < a.dim(); ++m) div += spectral::partial_derivative(a[m], m);
  return div;
}

Vec3 project_n(const Vec3& u1, const Vec3& u2) {
  const double n1 = norm(u1);
  const double n2 = norm(u2);
  const double c = dot(u1, u2);
  if (!(n1 > 0.5 && n1 < 2.0 && n2 > 0.5 && n2 < 2.0 && std::abs(c) < kProjectionBound)) {
    std::ostringstream os;
    os << "project_n: arguments outside the admissible region (|u1| = " << n1
       << ", |u2| = " << n2 << ", |u1.u2| = " << std::abs(c) << ", bound 2^-5)";
    throw FrameDegenerate(os.str());
  }
  const Vec3 p = u1 - (c / (n2 * n2)) * u2;
  return p / norm(p);
}

Vec3 default_transverse(const Vec3& q) {
  const double nq = norm(q);
  if (!(nq > 0.0)) throw std::invalid_argument("default_transverse: zero base point");
  const Vec3 unit_q = q / nq;
  const Vec3 basis[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const auto& e : basis) {
    const Vec3 p = e - dot(e, unit_q) * unit_q;
    // A basis vector parallel to q leaves nothing after Gram-Schmidt.
    if (norm(p) > 1e-8) return p / norm(p);
  }
  throw std::logic_error("default_transverse: unreachable");
}

Frame projection_frame(const SphereField& s, const Vec3& qp) {
  if (std::abs(norm(qp) - 1.0) > 1e-12) {
    throw std::invalid_argument("projection_frame: transverse direction is not a unit vector");
  }
  const Grid& grid = s.grid();
  std::size_t worst = 0;
  double worst_dot = -1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double c = std::abs(dot(s[i], qp));
    if (c > worst_dot) {
      worst_dot = c;
      worst = i;
    }
  }
  if (!(worst_dot < kProjectionBound)) {
    std::ostringstream os;
    os << "projection_frame: |s . Q'| = " << worst_dot << " >= 2^-5 at x = "
       << describe_point(grid, worst) << " (flat index " << worst << ")";
    throw FrameDegenerate(os.str());
  }
  VectorField3 v(grid);
  VectorField3 w(grid);
  for (std::size_t i = 0; i < s.size(); ++i) {
    v[i] = project_n(qp, s[i]);
    w[i] = cross(s[i], v[i]);
  }
  return Frame(s, std::move(v), std::move(w));
}

Frame projection_frame(const SphereField& s) {
  return projection_frame(s, default_transverse(s.base()));
}

SweepFrame sweep_frame(const SphereField& s) {
  const Grid& grid = s.grid();
  const int d = grid.dim();
  const int n = grid.n();

  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int a = 0; a < d; ++a) {
      const double jump = norm(s[i] - s[grid.neighbour(i, a, +1)]);
      if (jump > kOscillationBound) {
        std::ostringstream os;
        os << "sweep_frame: |s(x) - s(y)| = " << jump << " exceeds 2^-10 between neighbours at x = "
           << describe_point(grid, i) << " along axis " << a << "; refine the grid";
        throw FrameDegenerate(os.str());
      }
    }
  }

  VectorField3 v(grid);
  v[0] = project_n(default_transverse(s[0]), s[0]);

  // Axis a extends the frame from the hyperplane spanned by axes < a (all
  // other indices zero) one layer at a time.
  for (int a = 0; a < d; ++a) {
    std::size_t layer = 1;
    for (int b = 0; b < a; ++b) layer *= static_cast<std::size_t>(n);
    for (int step = 1; step < n; ++step) {
      for (std::size_t t = 0; t < layer; ++t) {
        Grid::Index idx{};
        std::size_t rest = t;
        for (int b = 0; b < a; ++b) {
          idx[b] = static_cast<int>(rest % static_cast<std::size_t>(n));
          rest /= static_cast<std::size_t>(n);
        }
        idx[a] = step;
        const std::size_t here = grid.flat(idx);
        const std::size_t prev = here - grid.stride(a);
        v[here] = project_n(v[prev], s[here]);
      }
    }
  }

  double seam = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto idx = grid.index(i);
    for (int a = 0; a < d; ++a) {
      if (idx[a] != n - 1) continue;
      const std::size_t next = grid.neighbour(i, a, +1);
      seam = std::max(seam, norm(project_n(v[i], s[next]) - v[next]));
    }
  }

  VectorField3 w = cross(s.values(), v);
  return SweepFrame{Frame(s, std::move(v), std::move(w)), seam,
                    seam > SweepFrame::kSeamWarning};
}

Connection connection_of(const Frame& frame) {
  const Grid& grid = frame.grid();
  std::vector<ScalarField> a;
  a.reserve(grid.dim());
  for (int m = 0; m < grid.dim(); ++m) {
    const VectorField3 dv = spectral::vector_apply(
        frame.v(), [m](const ScalarField& f) { return spectral::partial_derivative(f, m); });
    a.push_back(dot(dv, frame.w()));
  }
  return Connection(std::move(a));
}

Frame rotate_frame(const Frame& frame, const ScalarField& chi) {
  require_same_grid(frame.grid(), chi.grid(), "rotate_frame");
  VectorField3 v(frame.grid());
  VectorField3 w(frame.grid());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double c = std::cos(chi[i].real());
    const double sn = std::sin(chi[i].real());
    v[i] = c * frame.v()[i] + sn * frame.w()[i];
    w[i] = -sn * frame.v()[i] + c * frame.w()[i];
  }
  return Frame(frame.s(), std::move(v), std::move(w));
}

CoulombGauge coulomb_fix(const Frame& frame) {
  const Connection a = connection_of(frame);
  const Grid& grid = frame.grid();
  // chi^ = sum_m i xi_m A_m^ / |xi|^2 with the odd (Nyquist-free) xi in both
  // places, so that div(A + grad chi) vanishes mode by mode.
  std::vector<Complex> c(grid.size(), Complex(0.0));
  std::vector<double> odd2(grid.size(), 0.0);
  for (int m = 0; m < grid.dim(); ++m) {
    const auto xi = grid.odd_wavenumbers(m);
    for (std::size_t i = 0; i < c.size(); ++i) odd2[i] += xi[i] * xi[i];
  }
  for (int m = 0; m < grid.dim(); ++m) {
    const auto xi = grid.odd_wavenumbers(m);
    const auto am = spectral::coefficients(a[m]);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (odd2[i] > 0.0) c[i] += Complex(0.0, xi[i] / odd2[i]) * am[i];
    }
  }
  const ScalarField chi = spectral::from_coefficients(grid, std::move(c)).real_part();

  std::vector<ScalarField> fixed;
  fixed.reserve(grid.dim());
  for (int m = 0; m < grid.dim(); ++m) {
    fixed.push_back((a[m] + spectral::partial_derivative(chi, m)).real_part());
  }
  return CoulombGauge{rotate_frame(frame, chi), Connection(std::move(fixed)), chi};
}

SphereField renormalize(const VectorField3& s, const Vec3& base) {
  VectorField3 out(s.grid());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double len = norm(s[i]);
    if (!(len >= 0.5 && len <= 2.0)) {
      std::ostringstream os;
      os << "renormalize: |s| = " << len << " outside [1/2, 2] at x = "
         << describe_point(s.grid(), i);
      throw BlowupSuspected(os.str());
    }
    out[i] = s[i] / len;
  }
  return SphereField(std::move(out), base);
}

double unit_violation(const VectorField3& s) {
  double worst = 0.0;
  for (const auto& v : s.values()) {
    const double dev = std::abs(norm(v) - 1.0);
    worst = std::max(worst, std::isnan(dev) ? INFINITY : dev);
  }
  return worst;
}

}  // namespace smap
