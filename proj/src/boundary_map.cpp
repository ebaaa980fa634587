#include "qcx/boundary_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcx/errors.hpp"
#include "qcx/quadrature.hpp"

namespace qcx {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail_input(const std::string& msg) { throw InputError(msg); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) fail_input(std::string(what) + " must be finite");
}

// ---------------------------------------------------------------------------
// Piecewise linear with affine tails: the exact-integration workhorse.

class PiecewiseLinearImpl final : public MapImpl {
 public:
  PiecewiseLinearImpl(std::vector<double> ts, std::vector<double> hs,
                      double sl, double sr)
      : t_(std::move(ts)), h_(std::move(hs)), sl_(sl), sr_(sr) {
    if (t_.empty() || t_.size() != h_.size())
      fail_input("piecewise_linear needs matching, nonempty knot and value lists");
    for (size_t i = 0; i < t_.size(); ++i) {
      require_finite(t_[i], "breakpoint");
      require_finite(h_[i], "breakpoint value");
    }
    for (size_t i = 1; i < t_.size(); ++i) {
      if (!(t_[i] > t_[i - 1])) {
        std::ostringstream os;
        os << "breakpoints must be strictly increasing; entries " << i - 1
           << " and " << i << " are not";
        fail_input(os.str());
      }
      if (!(h_[i] > h_[i - 1])) {
        std::ostringstream os;
        os << "breakpoint values must be strictly increasing; entries "
           << i - 1 << " and " << i << " are not";
        fail_input(os.str());
      }
    }
    if (!(sl_ > 0) || !(sr_ > 0))
      fail_input("tail slopes must be strictly positive");
    n_ = static_cast<int>(t_.size());
    slopes_.resize(n_ > 1 ? n_ - 1 : 0);
    for (int i = 0; i + 1 < n_; ++i)
      slopes_[i] = (h_[i + 1] - h_[i]) / (t_[i + 1] - t_[i]);
    prefix_.resize(n_);
    prefix_[0] = 0;
    for (int i = 0; i + 1 < n_; ++i)
      prefix_[i + 1] =
          prefix_[i] + 0.5 * (t_[i + 1] - t_[i]) * (h_[i] + h_[i + 1]);
  }

  double value(double t) const override {
    const int i = segment_of(t);
    if (i < 0) return h_.front() + sl_ * (t - t_.front());
    if (i >= n_ - 1) return h_.back() + sr_ * (t - t_.back());
    return h_[i] + slopes_[i] * (t - t_[i]);
  }

  double integral(double a, double b, double) const override {
    return antiderivative(b) - antiderivative(a);
  }

  OffsetStats offsets(double x, double y, double) const override {
    OffsetStats o;
    o.diff_plus = increment_right(x, y);
    o.diff_minus = increment_left(x, y);
    o.mean_plus = offset_integral_plus(x, y) / y;
    o.mean_minus = offset_integral_minus(x, y) / y;
    return o;
  }

  std::pair<double, double> increments(double x, double y) const override {
    return {increment_right(x, y), increment_left(x, y)};
  }

  void kinks_in(double a, double b, std::vector<double>& out) const override {
    auto lo = std::lower_bound(t_.begin(), t_.end(), a);
    for (auto it = lo; it != t_.end() && *it <= b; ++it) out.push_back(*it);
  }

  bool exact_integrals() const override { return true; }

  const std::vector<double>& knots() const { return t_; }
  const std::vector<double>& knot_values() const { return h_; }
  double left_slope() const { return sl_; }
  double right_slope() const { return sr_; }

 private:
  // Largest i with t_[i] <= t; -1 marks the left tail.
  int segment_of(double t) const {
    return static_cast<int>(std::upper_bound(t_.begin(), t_.end(), t) -
                            t_.begin()) -
           1;
  }
  double slope_of(int i) const {
    if (i < 0) return sl_;
    if (i >= n_ - 1) return sr_;
    return slopes_[i];
  }
  double antiderivative(double t) const {  // int_{t_[0]}^{t} h
    const int i = segment_of(t);
    if (i < 0) return -0.5 * (t_.front() - t) * (value(t) + h_.front());
    return prefix_[i] + 0.5 * (t - t_[i]) * (h_[i] + value(t));
  }
  // The four walks below are driven by the interval length, never by a
  // computed endpoint x + y or x - y.  When |x| dwarfs y the rounded
  // endpoint would corrupt the whole difference, while a knot crossing
  // subtracts two nearby numbers, which doubles handle exactly.
  double increment_right(double a, double len) const {  // h(a+len) - h(a)
    if (!(len > 0)) return 0;
    double acc = 0, cur = a, rem = len;
    int i = segment_of(a);
    while (true) {
      const double piece_end = (i >= 0 && i < n_ - 1) ? t_[i + 1]
                               : (i < 0 ? t_.front() : kInf);
      const double step = std::min(rem, piece_end - cur);
      acc += slope_of(i) * step;
      rem -= step;
      if (rem <= 0) break;
      cur = piece_end;
      ++i;
    }
    return acc;
  }
  double increment_left(double b, double len) const {  // h(b) - h(b-len)
    if (!(len > 0)) return 0;
    double acc = 0, cur = b, rem = len;
    int i = segment_of(b);
    while (true) {
      const double piece_begin = i >= 0 ? t_[i] : -kInf;
      const double step = std::min(rem, cur - piece_begin);
      acc += slope_of(i) * step;
      rem -= step;
      if (rem <= 0) break;
      cur = piece_begin;
      --i;
    }
    return acc;
  }
  double offset_integral_plus(double a, double len) const {
    // int_a^{a+len} (h(t) - h(a)) dt via running offsets
    if (!(len > 0)) return 0;
    double acc = 0, cur = a, rem = len, off = 0;
    int i = segment_of(a);
    while (true) {
      const double piece_end = (i >= 0 && i < n_ - 1) ? t_[i + 1]
                               : (i < 0 ? t_.front() : kInf);
      const double step = std::min(rem, piece_end - cur);
      const double off_end = off + slope_of(i) * step;
      acc += 0.5 * step * (off + off_end);
      off = off_end;
      rem -= step;
      if (rem <= 0) break;
      cur = piece_end;
      ++i;
    }
    return acc;
  }
  double offset_integral_minus(double b, double len) const {
    // int_{b-len}^{b} (h(b) - h(t)) dt, walking leftward from b
    if (!(len > 0)) return 0;
    double acc = 0, cur = b, rem = len, off = 0;
    int i = segment_of(b);
    while (true) {
      const double piece_begin = i >= 0 ? t_[i] : -kInf;
      const double step = std::min(rem, cur - piece_begin);
      const double off_begin = off + slope_of(i) * step;
      acc += 0.5 * step * (off + off_begin);
      off = off_begin;
      rem -= step;
      if (rem <= 0) break;
      cur = piece_begin;
      --i;
    }
    return acc;
  }

  std::vector<double> t_, h_, slopes_, prefix_;
  double sl_, sr_;
  int n_ = 0;
};

// ---------------------------------------------------------------------------
// Periodic piecewise linear on [0,1] extended by h(t+1) = h(t) + 1; the lift
// class produced by circle sampling.

class PeriodicPiecewiseLinearImpl final : public MapImpl {
 public:
  PeriodicPiecewiseLinearImpl(std::vector<double> xs, std::vector<double> vs)
      : xs_(std::move(xs)), vs_(std::move(vs)) {
    if (xs_.size() < 2 || xs_.size() != vs_.size())
      fail_input("periodic lift needs matching knot and value lists with both endpoints");
    if (xs_.front() != 0.0 || xs_.back() != 1.0 || vs_.front() != 0.0 ||
        vs_.back() != 1.0)
      fail_input("periodic lift must run from (0,0) to (1,1)");
    for (size_t i = 1; i < xs_.size(); ++i) {
      if (!(xs_[i] > xs_[i - 1]) || !(vs_[i] > vs_[i - 1])) {
        std::ostringstream os;
        os << "periodic lift knots must be strictly increasing; entries "
           << i - 1 << " and " << i << " are not";
        fail_input(os.str());
      }
    }
    m_ = static_cast<int>(xs_.size()) - 1;
    slopes_.resize(m_);
    for (int j = 0; j < m_; ++j)
      slopes_[j] = (vs_[j + 1] - vs_[j]) / (xs_[j + 1] - xs_[j]);
    prefix_.resize(m_ + 1);
    prefix_[0] = 0;
    for (int j = 0; j < m_; ++j)
      prefix_[j + 1] =
          prefix_[j] + 0.5 * (xs_[j + 1] - xs_[j]) * (vs_[j] + vs_[j + 1]);
  }

  double value(double t) const override {
    const double n = std::floor(t);
    return n + pvalue(t - n);
  }

  double integral(double a, double b, double) const override {
    return antiderivative(b) - antiderivative(a);
  }

  OffsetStats offsets(double x, double y, double) const override {
    OffsetStats o;
    o.diff_plus = increment_right(x, y);
    o.diff_minus = increment_left(x, y);
    o.mean_plus = offset_integral_plus(x, y) / y;
    o.mean_minus = offset_integral_minus(x, y) / y;
    return o;
  }

  std::pair<double, double> increments(double x, double y) const override {
    return {increment_right(x, y), increment_left(x, y)};
  }

  void kinks_in(double a, double b, std::vector<double>& out) const override {
    for (double n = std::floor(a); n <= std::floor(b) + 1; n += 1.0)
      for (int j = 0; j < m_; ++j) {
        const double t = n + xs_[j];
        if (t >= a && t <= b) out.push_back(t);
      }
  }

  bool exact_integrals() const override { return true; }

 private:
  int base_index(double tau) const {
    int j = static_cast<int>(std::upper_bound(xs_.begin(), xs_.end(), tau) -
                             xs_.begin()) -
            1;
    return std::clamp(j, 0, m_ - 1);
  }
  double pvalue(double tau) const {
    const int j = base_index(tau);
    return vs_[j] + slopes_[j] * (tau - xs_[j]);
  }
  double pprefix(double tau) const {
    const int j = base_index(tau);
    return prefix_[j] + 0.5 * (tau - xs_[j]) * (vs_[j] + pvalue(tau));
  }
  double antiderivative(double t) const {
    const double n = std::floor(t);
    const double tau = t - n;
    return 0.5 * n * (n - 1) + n * prefix_.back() + n * tau + pprefix(tau);
  }
  // Length-driven walks in the reduced coordinate tau = a - floor(a); see
  // the plain class for why endpoints are never formed.  Wrapping resets
  // tau to 0 (rightward) or 1 (leftward); period bookkeeping is implicit
  // because the slopes over one period integrate to exactly 1.
  double increment_right(double a, double len) const {
    if (!(len > 0)) return 0;
    double acc = 0, rem = len;
    double cur = a - std::floor(a);
    int j = base_index(cur);
    while (true) {
      const double step = std::min(rem, xs_[j + 1] - cur);
      acc += slopes_[j] * step;
      rem -= step;
      if (rem <= 0) break;
      cur = xs_[j + 1];
      if (++j == m_) {
        j = 0;
        cur = 0.0;
      }
    }
    return acc;
  }
  double increment_left(double b, double len) const {
    if (!(len > 0)) return 0;
    double acc = 0, rem = len;
    double cur = b - std::floor(b);
    int j = base_index(cur);
    while (true) {
      const double step = std::min(rem, cur - xs_[j]);
      acc += slopes_[j] * step;
      rem -= step;
      if (rem <= 0) break;
      cur = xs_[j];
      if (--j < 0) {
        j = m_ - 1;
        cur = 1.0;
      }
    }
    return acc;
  }
  double offset_integral_plus(double a, double len) const {
    if (!(len > 0)) return 0;
    double acc = 0, rem = len, off = 0;
    double cur = a - std::floor(a);
    int j = base_index(cur);
    while (true) {
      const double step = std::min(rem, xs_[j + 1] - cur);
      const double off_end = off + slopes_[j] * step;
      acc += 0.5 * step * (off + off_end);
      off = off_end;
      rem -= step;
      if (rem <= 0) break;
      cur = xs_[j + 1];
      if (++j == m_) {
        j = 0;
        cur = 0.0;
      }
    }
    return acc;
  }
  double offset_integral_minus(double b, double len) const {
    if (!(len > 0)) return 0;
    double acc = 0, rem = len, off = 0;
    double cur = b - std::floor(b);
    int j = base_index(cur);
    while (true) {
      const double step = std::min(rem, cur - xs_[j]);
      const double off_begin = off + slopes_[j] * step;
      acc += 0.5 * step * (off + off_begin);
      off = off_begin;
      rem -= step;
      if (rem <= 0) break;
      cur = xs_[j];
      if (--j < 0) {
        j = m_ - 1;
        cur = 1.0;
      }
    }
    return acc;
  }

  std::vector<double> xs_, vs_, slopes_, prefix_;
  int m_ = 0;
};

// ---------------------------------------------------------------------------
// Signed power map t -> sign(t) |t|^alpha.

class PowerImpl final : public MapImpl {
 public:
  explicit PowerImpl(double alpha) : alpha_(alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha))
      fail_input("power map needs alpha > 0");
  }
  double value(double t) const override {
    if (t == 0) return 0;
    const double m = std::pow(std::abs(t), alpha_);
    return t > 0 ? m : -m;
  }
  double integral(double a, double b, double) const override {
    return antiderivative(b) - antiderivative(a);
  }
  void kinks_in(double a, double b, std::vector<double>& out) const override {
    if (a <= 0 && 0 <= b) out.push_back(0);
  }
  bool exact_integrals() const override { return true; }

 private:
  double antiderivative(double t) const {
    return std::pow(std::abs(t), alpha_ + 1) / (alpha_ + 1);
  }
  double alpha_;
};

// ---------------------------------------------------------------------------
// Identity away from (-1, 0); t / (1 - log|t|) inside, which flattens with a
// logarithmic rate toward 0; affine continuation of slope 2 below -1.

class LogSingularImpl final : public MapImpl {
 public:
  double value(double t) const override {
    if (t >= 0) return t;
    if (t > -1) return t / (1 - std::log(-t));
    return 2 * t + 1;
  }

  double integral(double a, double b, double tol) const override {
    double acc = 0;
    if (a < -1) {
      const double hi = std::min(b, -1.0);
      acc += (hi * hi + hi) - (a * a + a);
    }
    if (b > 0) {
      const double lo = std::max(a, 0.0);
      acc += 0.5 * (b - lo) * (b + lo);
    }
    const double lo = std::max(a, -1.0), hi = std::min(b, 0.0);
    if (hi > lo) {
      std::vector<double> seeds;
      for (int k = 1; k <= 45; ++k) seeds.push_back(-std::ldexp(1.0, -k));
      const QuadResult r = gk_adaptive_seeded(
          [this](double t) { return value(t); }, lo, hi, std::move(seeds),
          std::max(tol, 1e-15), 4000);
      if (!r.converged)
        throw NumericError("log_singular integral did not converge", r.error);
      acc += r.value;
    }
    return acc;
  }

  void kinks_in(double a, double b, std::vector<double>& out) const override {
    if (a <= -1 && -1 <= b) out.push_back(-1);
    if (a <= 0 && 0 <= b) out.push_back(0);
  }
};

// ---------------------------------------------------------------------------
// Affine conjugation t -> p h(q t + r) + s with p q > 0, used for transforms
// and normalization of the non-materializable families.  Nested wrappers are
// flattened at construction.

class AffineConjugateImpl final : public MapImpl {
 public:
  static std::shared_ptr<const MapImpl> make(
      double p, double q, double r, double s,
      std::shared_ptr<const MapImpl> inner) {
    if (!(p * q > 0) || !std::isfinite(p) || !std::isfinite(q) ||
        !std::isfinite(r) || !std::isfinite(s))
      fail_input("affine conjugation needs finite coefficients with p q > 0");
    if (auto nested =
            std::dynamic_pointer_cast<const AffineConjugateImpl>(inner)) {
      // p (p1 h(q1 (q t + r) + r1) + s1) + s
      return make(p * nested->p_, nested->q_ * q, nested->q_ * r + nested->r_,
                  p * nested->s_ + s, nested->inner_);
    }
    return std::shared_ptr<const MapImpl>(
        new AffineConjugateImpl(p, q, r, s, std::move(inner)));
  }

  double value(double t) const override {
    return p_ * inner_->value(q_ * t + r_) + s_;
  }

  double integral(double a, double b, double tol) const override {
    const double ia = q_ * a + r_, ib = q_ * b + r_;
    const double inner_tol = tol * std::abs(q_ / p_);
    const double inner_val = (q_ > 0) ? inner_->integral(ia, ib, inner_tol)
                                      : -inner_->integral(ib, ia, inner_tol);
    return (p_ / q_) * inner_val + s_ * (b - a);
  }

  OffsetStats offsets(double x, double y, double tol) const override {
    const OffsetStats in =
        inner_->offsets(q_ * x + r_, std::abs(q_) * y, tol / std::abs(p_));
    const double ap = std::abs(p_);
    OffsetStats o;
    if (q_ > 0) {
      o = {ap * in.diff_plus, ap * in.diff_minus, ap * in.mean_plus,
           ap * in.mean_minus};
    } else {
      // Reflection swaps the two sides.
      o = {ap * in.diff_minus, ap * in.diff_plus, ap * in.mean_minus,
           ap * in.mean_plus};
    }
    return o;
  }

  std::pair<double, double> increments(double x, double y) const override {
    const auto in = inner_->increments(q_ * x + r_, std::abs(q_) * y);
    const double ap = std::abs(p_);
    return q_ > 0 ? std::make_pair(ap * in.first, ap * in.second)
                  : std::make_pair(ap * in.second, ap * in.first);
  }

  void kinks_in(double a, double b, std::vector<double>& out) const override {
    const double ia = q_ * a + r_, ib = q_ * b + r_;
    std::vector<double> inner_kinks;
    inner_->kinks_in(std::min(ia, ib), std::max(ia, ib), inner_kinks);
    for (double u : inner_kinks) out.push_back((u - r_) / q_);
    std::sort(out.begin(), out.end());
  }

  bool exact_integrals() const override { return inner_->exact_integrals(); }

 private:
  AffineConjugateImpl(double p, double q, double r, double s,
                      std::shared_ptr<const MapImpl> inner)
      : p_(p), q_(q), r_(r), s_(s), inner_(std::move(inner)) {}

  double p_, q_, r_, s_;
  std::shared_ptr<const MapImpl> inner_;
};

const PiecewiseLinearImpl* as_pl(const MapImpl& m) {
  return dynamic_cast<const PiecewiseLinearImpl*>(&m);
}

}  // namespace

// ---------------------------------------------------------------------------
// MapImpl defaults

OffsetStats MapImpl::offsets(double x, double y, double tol) const {
  const double hx = value(x);
  OffsetStats o;
  o.diff_plus = value(x + y) - hx;
  o.diff_minus = hx - value(x - y);
  o.mean_plus = integral(x, x + y, tol * y) / y - hx;
  o.mean_minus = hx - integral(x - y, x, tol * y) / y;
  return o;
}

std::pair<double, double> MapImpl::increments(double x, double y) const {
  const double hx = value(x);
  return {value(x + y) - hx, hx - value(x - y)};
}

void MapImpl::kinks_in(double, double, std::vector<double>&) const {}

// ---------------------------------------------------------------------------
// LineHomeo

double LineHomeo::integral(double a, double b, double tol) const {
  if (a == b) return 0;
  return a < b ? impl_->integral(a, b, tol) : -impl_->integral(b, a, tol);
}

OffsetStats LineHomeo::offsets(double x, double y, double tol) const {
  if (!(y > 0)) fail_input("offsets need y > 0");
  return impl_->offsets(x, y, tol);
}

std::pair<double, double> LineHomeo::increments(double x, double t) const {
  if (!(t > 0)) fail_input("increments need t > 0");
  return impl_->increments(x, t);
}

void LineHomeo::kinks_in(double a, double b, std::vector<double>& out) const {
  impl_->kinks_in(a, b, out);
}

LineHomeo LineHomeo::normalized(double x, double y, double tol) const {
  (void)tol;
  if (!(y > 0)) fail_input("normalized needs y > 0");
  const double hx = impl_->value(x);
  const double delta = impl_->increments(x, y).first;
  if (const auto* pl = as_pl(*impl_)) {
    std::vector<double> ts, hs;
    ts.reserve(pl->knots().size());
    hs.reserve(ts.capacity());
    for (size_t i = 0; i < pl->knots().size(); ++i) {
      ts.push_back((pl->knots()[i] - x) / y);
      hs.push_back((pl->knot_values()[i] - hx) / delta);
    }
    return piecewise_linear(std::move(ts), std::move(hs),
                            pl->left_slope() * y / delta,
                            pl->right_slope() * y / delta);
  }
  return LineHomeo(
      AffineConjugateImpl::make(1.0 / delta, y, x, -hx / delta, impl_));
}

LineHomeo LineHomeo::postcomposed_affine(double a, double b) const {
  if (!(a > 0)) fail_input("postcomposed_affine needs a > 0");
  require_finite(b, "offset");
  if (const auto* pl = as_pl(*impl_)) {
    std::vector<double> hs;
    hs.reserve(pl->knot_values().size());
    for (double h : pl->knot_values()) hs.push_back(a * h + b);
    return piecewise_linear(pl->knots(), std::move(hs), a * pl->left_slope(),
                            a * pl->right_slope());
  }
  return LineHomeo(AffineConjugateImpl::make(a, 1.0, 0.0, b, impl_));
}

LineHomeo LineHomeo::precomposed_affine(double a, double b) const {
  if (!(a > 0)) fail_input("precomposed_affine needs a > 0");
  require_finite(b, "offset");
  if (const auto* pl = as_pl(*impl_)) {
    std::vector<double> ts;
    ts.reserve(pl->knots().size());
    for (double t : pl->knots()) ts.push_back((t - b) / a);
    return piecewise_linear(std::move(ts), pl->knot_values(),
                            a * pl->left_slope(), a * pl->right_slope());
  }
  return LineHomeo(AffineConjugateImpl::make(1.0, a, b, 0.0, impl_));
}

LineHomeo LineHomeo::reflected() const {
  if (const auto* pl = as_pl(*impl_)) {
    std::vector<double> ts, hs;
    const auto& kt = pl->knots();
    const auto& kv = pl->knot_values();
    for (size_t i = kt.size(); i-- > 0;) {
      ts.push_back(-kt[i]);
      hs.push_back(-kv[i]);
    }
    return piecewise_linear(std::move(ts), std::move(hs), pl->right_slope(),
                            pl->left_slope());
  }
  return LineHomeo(AffineConjugateImpl::make(-1.0, -1.0, 0.0, 0.0, impl_));
}

LineHomeo LineHomeo::identity() { return piecewise_linear({0}, {0}, 1, 1); }

LineHomeo LineHomeo::two_slope(double a) {
  if (!(a > 0) || !std::isfinite(a)) fail_input("two_slope needs a > 0");
  return piecewise_linear({0}, {0}, 1.0 / a, 1.0);
}

LineHomeo LineHomeo::power(double alpha) {
  return LineHomeo(std::make_shared<const PowerImpl>(alpha));
}

LineHomeo LineHomeo::log_singular() {
  return LineHomeo(std::make_shared<const LogSingularImpl>());
}

LineHomeo LineHomeo::piecewise_linear(std::vector<double> breakpoints,
                                      std::vector<double> values,
                                      double left_slope, double right_slope) {
  return LineHomeo(std::make_shared<const PiecewiseLinearImpl>(
      std::move(breakpoints), std::move(values), left_slope, right_slope));
}

LineHomeo LineHomeo::periodic_piecewise_linear(std::vector<double> knots,
                                               std::vector<double> values) {
  return LineHomeo(std::make_shared<const PeriodicPiecewiseLinearImpl>(
      std::move(knots), std::move(values)));
}

// ---------------------------------------------------------------------------
// CircleHomeo

CircleHomeo CircleHomeo::identity() {
  return CircleHomeo(LineHomeo::periodic_piecewise_linear({0, 1}, {0, 1}), 0.0);
}

CircleHomeo CircleHomeo::from_lift(LineHomeo lift, double rotation_offset) {
  require_finite(rotation_offset, "rotation offset");
  bool periodic = std::abs(lift(0.0)) <= 1e-9 &&
                  std::abs(lift(1.0) - 1.0) <= 1e-9;
  for (double t : {-0.6, -0.25, 0.1, 0.4, 0.85})
    periodic = periodic && std::abs(lift(t + 1) - lift(t) - 1) <= 1e-9;
  if (!periodic)
    fail_input("circle lift must fix 0, send 1 to 1, and commute with t -> t+1");
  return CircleHomeo(std::move(lift), rotation_offset);
}

CircleHomeo lift_circle(const std::vector<std::pair<double, double>>& samples) {
  if (samples.empty()) fail_input("circle samples must be nonempty");
  if (std::abs(samples[0].first) > 1e-12)
    fail_input("first circle sample must sit at theta = 0");
  const size_t n = samples.size();
  for (size_t j = 0; j < n; ++j) {
    require_finite(samples[j].first, "sample angle");
    require_finite(samples[j].second, "sample image angle");
    if (samples[j].first < 0 || samples[j].first >= kTwoPi) {
      std::ostringstream os;
      os << "sample " << j << " has angle outside [0, 2 pi)";
      fail_input(os.str());
    }
    if (j > 0 && !(samples[j].first > samples[j - 1].first)) {
      std::ostringstream os;
      os << "sample angles must be strictly increasing; entries " << j - 1
         << " and " << j << " are not";
      fail_input(os.str());
    }
  }
  const double rotation = samples[0].second;
  std::vector<double> xs, vs;
  xs.reserve(n + 1);
  vs.reserve(n + 1);
  xs.push_back(0.0);
  vs.push_back(0.0);
  double cum = 0;
  for (size_t j = 1; j < n; ++j) {
    double d = std::fmod(samples[j].second - samples[j - 1].second, kTwoPi);
    if (d <= 0) d += kTwoPi;
    if (d >= kTwoPi - 1e-12) {
      std::ostringstream os;
      os << "image angles of samples " << j - 1 << " and " << j
         << " coincide on the circle";
      fail_input(os.str());
    }
    cum += d;
    if (cum >= kTwoPi) {
      std::ostringstream os;
      os << "image angles wrap past a full turn between samples " << j - 1
         << " and " << j << "; the sample list is not monotone on the circle";
      fail_input(os.str());
    }
    xs.push_back(samples[j].first / kTwoPi);
    vs.push_back(cum / kTwoPi);
  }
  double closing = std::fmod(rotation + kTwoPi - samples[n - 1].second, kTwoPi);
  if (closing <= 0) closing += kTwoPi;
  if (std::abs(cum + closing - kTwoPi) > 1e-9)
    fail_input("circle samples do not wind exactly once");
  xs.push_back(1.0);
  vs.push_back(1.0);
  return CircleHomeo::from_lift(
      LineHomeo::periodic_piecewise_linear(std::move(xs), std::move(vs)),
      rotation);
}

}  // namespace qcx
