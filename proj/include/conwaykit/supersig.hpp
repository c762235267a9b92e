#pragma once

#include <optional>
#include <string>

#include "conwaykit/conway.hpp"

namespace ck {

// Numeric evaluation drifts off its axis only through floating error; crossing
// the tolerance is reported as this instead of silently projecting back.
struct AxisDriftError : AlgebraUndefined {
  using AlgebraUndefined::AlgebraUndefined;
};

enum class Axis { real, imaginary };

// A number confined to the real or imaginary axis: r = magnitude * i^(axis).
// The sign lives in the magnitude.  `zero` marks values classified as zero by
// the relative tolerance (or exactly zero by construction).
struct AxisValue {
  double magnitude = 0.0;
  Axis axis = Axis::real;
  bool zero = false;
  std::string to_string() const;
};

// Element of the supersignature partial algebra: the axis-confined first
// coordinate and the integer level z, with z absent meaning infinity.  The
// defining constraints couple them: z is infinite exactly when r is zero, and
// for nonzero r the residue of z mod 4 realizes i^z = r/|r|.
struct SupersigValue {
  AxisValue r;
  std::optional<int> z;
  std::string to_string() const;
};

struct SupersigOptions {
  // relative threshold: |r| <= epsilon * (running magnitude bound) counts as 0;
  // values inside (epsilon, 1000*epsilon) of the bound are refused as ambiguous
  double epsilon = 1e-9;
  // extra evaluations from shuffled base points when u != v, where the
  // underlying algebra is only conjectured consistent; any disagreement is an
  // error, never averaged away
  int consistency_checks = 3;
};

// First coordinate alone, evaluated from the two-variable skein polynomial at
// x = i*u, y = -i*v (the rewritten form of the defining relation
// -u*r1 + v*r2 = i*r0).  Stable: every monomial lands on one axis exactly.
AxisValue supersig_r(const LinkDiagram& d, double u, double v,
                     const SupersigOptions& opt = {});

// Full evaluation over the resolving tree.  Requires u*v > 0.  The reported r
// comes from supersig_r; the tree propagation must agree with it on axis, sign
// and vanishing or the result is refused.
SupersigValue supersignature(const LinkDiagram& d, double u, double v,
                             const SupersigOptions& opt = {});

// The parameter pair induced by the Jones skein relation under sqrt(t) = -i*w;
// w = 1 gives the classical signature pair (1/2, 1/2).
SupersigValue jones_supersignature(const LinkDiagram& d, double w,
                                   const SupersigOptions& opt = {});

}  // namespace ck
