#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace qcx {

// One-sided increments and offset means of h around a base point (x, y):
//
//   diff_plus  = h(x+y) - h(x)
//   diff_minus = h(x) - h(x-y)
//   mean_plus  = (1/y) int_x^{x+y}   (h(t) - h(x))   dt
//   mean_minus = (1/y) int_{x-y}^{x} (h(x) - h(t))   dt
//
// All four are strictly positive for an increasing map, carry no h(x)-sized
// terms, and are exactly the quantities the extension jet and the distortion
// ratio need.  Working with them instead of raw antiderivative differences
// keeps the jet stable at small y and large |x|.
struct OffsetStats {
  double diff_plus = 0;
  double diff_minus = 0;
  double mean_plus = 0;
  double mean_minus = 0;
};

// Implementation backend for a line homeomorphism.  Derived classes provide
// evaluation and integration; families with exact antiderivatives override
// offsets() with cancellation-free walks.
class MapImpl {
 public:
  virtual ~MapImpl() = default;
  virtual double value(double t) const = 0;
  // Oriented integral int_a^b h, a <= b.  tol is an absolute error budget;
  // exact families ignore it.
  virtual double integral(double a, double b, double tol) const = 0;
  virtual OffsetStats offsets(double x, double y, double tol) const;
  virtual std::pair<double, double> increments(double x, double y) const;
  // Append the locations in [a,b] where h has a slope break.
  virtual void kinks_in(double a, double b, std::vector<double>& out) const;
  virtual bool exact_integrals() const { return false; }
};

// Orientation-preserving homeomorphism of the real line.  Value type over a
// shared immutable backend: cheap to copy, safe to share across threads.
class LineHomeo {
 public:
  double operator()(double t) const { return impl_->value(t); }
  // int_a^b h with either orientation of (a, b).
  double integral(double a, double b, double tol) const;
  OffsetStats offsets(double x, double y, double tol) const;
  // (h(x+t) - h(x), h(x) - h(x-t)) without the offset means; exact for the
  // piecewise-linear class.
  std::pair<double, double> increments(double x, double t) const;
  void kinks_in(double a, double b, std::vector<double>& out) const;
  bool exact_integrals() const { return impl_->exact_integrals(); }

  // t -> (h(x + y t) - h(x)) / (h(x+y) - h(x)); fixes 0 and 1.
  LineHomeo normalized(double x, double y, double tol) const;
  // t -> a h(t) + b, a > 0.  The extension picks up the same affine map and
  // the dilatation is unchanged.
  LineHomeo postcomposed_affine(double a, double b) const;
  // t -> h(a t + b), a > 0.  Dilatation field moves by z -> a z + b.
  LineHomeo precomposed_affine(double a, double b) const;
  // t -> -h(-t).  Dilatation field reflects across the imaginary axis.
  LineHomeo reflected() const;

  static LineHomeo identity();
  static LineHomeo two_slope(double a);
  static LineHomeo power(double alpha);
  static LineHomeo log_singular();
  static LineHomeo piecewise_linear(std::vector<double> breakpoints,
                                    std::vector<double> values,
                                    double left_slope, double right_slope);
  // Lift of a circle homeomorphism: piecewise linear on [0,1] through the
  // given interior knots, extended by h(t+1) = h(t) + 1.
  static LineHomeo periodic_piecewise_linear(std::vector<double> knots,
                                             std::vector<double> values);

  const MapImpl& impl() const { return *impl_; }
  explicit LineHomeo(std::shared_ptr<const MapImpl> impl)
      : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const MapImpl> impl_;
};

// Orientation-preserving homeomorphism of the unit circle, stored as a
// rotation offset plus a periodic lift with lift(0) = 0, lift(1) = 1.
class CircleHomeo {
 public:
  const LineHomeo& lift() const { return lift_; }
  // theta_0 with h(1) = e^{i theta_0}: the rotation divided out of the lift.
  double rotation_offset() const { return rotation_offset_; }

  static CircleHomeo identity();
  static CircleHomeo from_lift(LineHomeo periodic_lift, double rotation_offset);

 private:
  CircleHomeo(LineHomeo lift, double rot)
      : lift_(std::move(lift)), rotation_offset_(rot) {}
  LineHomeo lift_;
  double rotation_offset_;
};

// Build a circle homeomorphism from boundary samples (theta_j, image angle),
// theta strictly increasing in [0, 2 pi) with theta_0 = 0.  The image angle
// of the first sample becomes the rotation offset; the remaining angles are
// unwrapped (each increment reduced into (0, 2 pi)) and must wind exactly
// once.  Raises InputError naming the offending pair otherwise.
CircleHomeo lift_circle(const std::vector<std::pair<double, double>>& samples);

}  // namespace qcx
