#pragma once
// Piecewise-linear approximation of a catalog nonlinearity.
//
// Construction: uniform knots with stride gamma = sqrt(8/a)*sqrt(eps) spanning
// [-c/eps^b, +c/eps^b], interpolating f at the knots (curvature bound a makes
// each chord accurate to gamma^2*a/8 = eps), extra knots at every f''
// discontinuity inside the span, and one ray on each side with the asymptote
// slope.  Ray intercepts pass through the edge knot values f(t_edge) rather
// than the asymptote intercepts: that keeps the function continuous
// everywhere, and since every catalog fixture approaches its asymptote
// one-sidedly the ray error stays <= eps as well.

#include <cstddef>
#include <string>
#include <vector>

#include "catalog.hpp"

namespace nlse {

struct PWLFunction {
  struct Piece {
    double slope, intercept;
  };

  std::vector<double> breakpoints;  // strictly increasing
  std::vector<Piece> pieces;        // breakpoints.size() + 1; pieces[i] covers
                                    // [breakpoints[i-1], breakpoints[i]); first
                                    // and last are rays
  double target_eps = 0.0;
  std::string source_name;

  std::size_t piece_count() const { return pieces.size(); }
};

// Builds the approximation; eps must be in (0, 1].  Affine sources short-
// circuit to a single exact line.  Knot budget is capped (Errc::resource).
PWLFunction build_pwl(const Nonlinearity& nl, double eps);

// Assembles a PWLFunction from raw parts (synthetic region-census fixtures,
// injected test shapes).  Validates shape and continuity.
PWLFunction make_pwl(std::vector<double> breakpoints, std::vector<PWLFunction::Piece> pieces,
                     std::string source_name = "custom", double target_eps = 0.0);

// Index of the piece owning x: half-open intervals, ties at a breakpoint go to
// the right piece.
std::size_t piece_index(const PWLFunction& pwl, double x);

double eval_pwl(const PWLFunction& pwl, double x);

// Max |f - pwl| over a uniform grid on [-half_width, half_width].
// Preconditions: half_width >= 2c/eps^b and spacing <= gamma/20.
double uniform_error(const Nonlinearity& nl, const PWLFunction& pwl, double half_width,
                     double spacing);

// Largest adjacent-piece value gap at a breakpoint (continuity defect).
double continuity_defect(const PWLFunction& pwl);

// Knot stride used by build_pwl.
double knot_stride(const Nonlinearity& nl, double eps);

}  // namespace nlse
