#include "conwaykit/supersig.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ck {

namespace {

constexpr double kAmbiguousFactor = 1e3;

double ipow(double b, int e) {
  if (e < 0) return 1.0 / ipow(b, -e);
  double out = 1.0;
  while (e) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

std::string fmt(double x) {
  double r = std::round(x);
  if (std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x))) {
    std::ostringstream os;
    os << static_cast<long long>(r);
    return os.str();
  }
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

int mod4(int z) { return ((z % 4) + 4) % 4; }

// value at one tree node: signed magnitude on the axis fixed by component
// parity, the accumulated magnitude bound for relative zero tests, and the
// level z (absent = infinity, which coincides with `zero` by construction)
struct NodeVal {
  double m = 0.0;
  double scale = 0.0;
  bool zero = true;
  std::optional<int> z;
};

class SupersigEval {
 public:
  SupersigEval(double u, double v, double eps) : u_(u), v_(v), eps_(eps) {}

  NodeVal go(const LinkDiagram& d) {
    TraversalReport t = traverse(d);
    int n = static_cast<int>(t.components.size());
    if (t.descending) return leaf(n);
    int p = t.bad.front();
    NodeVal ws = go(switch_crossing(d, p));
    NodeVal wo = go(smooth_oriented(d, p));
    return combine(d.crossings[p].sign, n, ws, wo);
  }

 private:
  NodeVal leaf(int k) const {
    int q = (k - 1) / 2;
    NodeVal out;
    out.m = ((q & 1) ? -1.0 : 1.0) * ipow(u_ - v_, k - 1);
    out.scale = std::abs(out.m);
    out.zero = out.m == 0.0;
    if (!out.zero) out.z = u_ > v_ ? k - 1 : (u_ < v_ ? -(k - 1) : 0);
    return out;
  }

  NodeVal combine(int sign, int n, const NodeVal& ws, const NodeVal& wo) const {
    // the pair handed to the operation must sit on adjacent levels
    if (ws.z && wo.z && std::abs(*ws.z - *wo.z) != 1)
      throw AlgebraUndefined("supersignature undefined: reference levels are not adjacent");

    // -u*r1 + v*r2 = i*r0 on signed magnitudes; kappa absorbs i^2 when the
    // parent value is real (even component parity).  scale tracks the largest
    // magnitude flowing down any root-to-leaf path, the growth that limits
    // how small a difference doubles can still resolve
    int a = (n - 1) & 1;
    double kappa = (a == 0) ? -1.0 : 1.0;
    NodeVal out;
    if (sign > 0) {
      out.m = (v_ * ws.m - kappa * wo.m) / u_;
      out.scale = std::max(std::abs(v_) * ws.scale, wo.scale) / std::abs(u_);
    } else {
      out.m = (u_ * ws.m + kappa * wo.m) / v_;
      out.scale = std::max(std::abs(u_) * ws.scale, wo.scale) / std::abs(v_);
    }

    double am = std::abs(out.m);
    if (ws.zero && wo.zero) {
      out.m = 0.0;
      out.zero = true;
    } else if (am <= eps_ * out.scale) {
      out.m = 0.0;
      out.zero = true;
    } else if (am < kAmbiguousFactor * eps_ * out.scale) {
      std::ostringstream os;
      os << "numerically ambiguous: |r| = " << am << " inside the unsafe band of the zero "
         << "threshold " << eps_ * out.scale;
      throw AlgebraUndefined(os.str());
    } else {
      out.zero = false;
    }
    if (out.zero) return out;

    int want = (a + (out.m < 0 ? 2 : 0)) & 3;
    if (wo.zero) {
      // z1 = z2 when the smoothed value vanishes; it must still realize i^z
      if (!ws.z || mod4(*ws.z) != want)
        throw AlgebraUndefined("supersignature undefined: no level satisfies i^z = r/|r|");
      out.z = ws.z;
    } else {
      int z0 = *wo.z;
      if (mod4(z0 - 1) == want)
        out.z = z0 - 1;
      else if (mod4(z0 + 1) == want)
        out.z = z0 + 1;
      else
        throw AlgebraUndefined(
            "supersignature undefined: no adjacent level satisfies i^z = r/|r|");
    }
    return out;
  }

  double u_, v_, eps_;
};

// new base points: shuffle component order, rotate each walk, renumber edges
// consecutively along the new walks
LinkDiagram rebase(const LinkDiagram& d, std::mt19937& rng) {
  TraversalReport t = traverse(d);
  std::vector<int> order(t.components.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::map<int, int> remap;
  int next = 1;
  for (int ci : order) {
    const auto& walk = t.components[ci];
    int sz = static_cast<int>(walk.size());
    int off = std::uniform_int_distribution<int>(0, sz - 1)(rng);
    for (int s = 0; s < sz; ++s) remap[walk[(off + s) % sz]] = next++;
  }
  LinkDiagram out;
  for (const Crossing& c : d.crossings)
    out.crossings.push_back(
        {remap[c.under_in], remap[c.under_out], remap[c.over_in], remap[c.over_out], c.sign});
  for (int e : d.circles) out.circles.push_back(remap[e]);
  return out;
}

void check_params(double u, double v) {
  if (!(u * v > 0.0)) throw std::invalid_argument("supersignature needs u*v > 0");
}

}  // namespace

std::string AxisValue::to_string() const {
  if (zero) return "0";
  return axis == Axis::real ? fmt(magnitude) : fmt(magnitude) + "i";
}

std::string SupersigValue::to_string() const {
  return "(" + r.to_string() + ", " + (z ? std::to_string(*z) : std::string("inf")) + ")";
}

AxisValue supersig_r(const LinkDiagram& d, double u, double v, const SupersigOptions& opt) {
  check_params(u, v);
  validate(d);
  LaurentPoly p = homfly(d);
  int n = static_cast<int>(components(d).size());
  int parity = (n - 1) & 1;

  // term c*x^j*y^k at x = i*u, y = -i*v contributes c*u^j*v^k*(-1)^k * i^(j+k);
  // the zero test is relative to the largest single term, the magnitude the
  // cancellation happens at
  double re = 0.0, im = 0.0, bound = 0.0;
  for (const auto& [e, c] : p.terms()) {
    int j = e[0], k = e[1];
    double mag = c.convert_to<double>() * ipow(u, j) * ipow(v, k) * ((k & 1) ? -1.0 : 1.0);
    switch (mod4(j + k)) {
      case 0: re += mag; break;
      case 1: im += mag; break;
      case 2: re -= mag; break;
      case 3: im -= mag; break;
    }
    bound = std::max(bound, std::abs(mag));
  }

  double on = parity == 0 ? re : im;
  double off = parity == 0 ? im : re;
  if (std::abs(off) > opt.epsilon * bound) {
    std::ostringstream os;
    os << "axis drift: off-axis part " << off << " exceeds tolerance " << opt.epsilon * bound;
    throw AxisDriftError(os.str());
  }

  AxisValue out;
  out.axis = parity == 0 ? Axis::real : Axis::imaginary;
  out.zero = std::abs(on) <= opt.epsilon * bound;
  out.magnitude = out.zero ? 0.0 : on;
  return out;
}

SupersigValue supersignature(const LinkDiagram& d, double u, double v,
                             const SupersigOptions& opt) {
  check_params(u, v);
  validate(d);
  SupersigEval ev(u, v, opt.epsilon);
  NodeVal root = ev.go(d);
  AxisValue r = supersig_r(d, u, v, opt);

  if (r.zero != root.zero)
    throw AlgebraUndefined(
        "numerically ambiguous: tree propagation and polynomial evaluation disagree on "
        "whether r vanishes");
  if (!r.zero && std::signbit(r.magnitude) != std::signbit(root.m))
    throw AlgebraUndefined(
        "numerically ambiguous: tree propagation and polynomial evaluation disagree on "
        "the sign of r");

  // base-point consistency: for u != v the algebra is only conjectured
  // consistent, so disagreement between resolving trees is surfaced
  if (u != v && opt.consistency_checks > 0) {
    std::mt19937 rng(20260817u + static_cast<unsigned>(d.crossings.size()));
    for (int i = 0; i < opt.consistency_checks; ++i) {
      NodeVal alt = ev.go(rebase(d, rng));
      if (alt.zero != root.zero || alt.z != root.z)
        throw AlgebraUndefined(
            "supersignature undefined: value changed under a base point change");
    }
  }
  return {r, root.z};
}

SupersigValue jones_supersignature(const LinkDiagram& d, double w, const SupersigOptions& opt) {
  if (w == 0.0) throw std::invalid_argument("jones supersignature needs w != 0");
  double s = w + 1.0 / w;
  if (s == 0.0) throw std::invalid_argument("jones supersignature needs w + 1/w != 0");
  return supersignature(d, w * w / s, 1.0 / (w * w * s), opt);
}

}  // namespace ck
