#include "pwl.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace nlse {
namespace {

constexpr double kMergeTol = 1e-12;      // duplicate-knot merge distance
constexpr std::size_t kKnotCap = 8u << 20;  // ~8M knots; guards surrogate builds

PWLFunction::Piece chord(const Nonlinearity& nl, double x0, double x1) {
  const double f0 = nl.value(x0), f1 = nl.value(x1);
  const double slope = (f1 - f0) / (x1 - x0);
  return {slope, f0 - slope * x0};
}

}  // namespace

double knot_stride(const Nonlinearity& nl, double eps) {
  return std::sqrt(8.0 / nl.cc.a) * std::sqrt(eps);
}

PWLFunction build_pwl(const Nonlinearity& nl, double eps) {
  require(eps > 0.0 && eps <= 1.0, Errc::precondition, "pwl eps must be in (0, 1]");

  PWLFunction out;
  out.target_eps = eps;
  out.source_name = nl.name;

  if (nl.affine) {  // exact single line, no knots
    const double f0 = nl.value(0.0);
    out.pieces.push_back({nl.value(1.0) - f0, f0});
    return out;
  }

  const double R = nl.cc.c / std::pow(eps, nl.cc.b);
  const double gamma = knot_stride(nl, eps);
  const auto n_int = static_cast<long long>(std::ceil(2.0 * R / gamma));
  require(n_int >= 0 && static_cast<std::size_t>(n_int) < kKnotCap, Errc::resource,
          "pwl knot budget exceeded for " + nl.name);

  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(n_int) + nl.second_derivative_discontinuities.size() + 1);
  for (long long i = 0; i < n_int; ++i) knots.push_back(-R + static_cast<double>(i) * gamma);
  knots.push_back(R);  // final knot clamped to the onset exactly

  // Near-duplicate stride knot next to the clamped onset: drop the stride one.
  if (knots.size() >= 2 && knots.back() - knots[knots.size() - 2] <= kMergeTol)
    knots.erase(knots.end() - 2);

  // Discontinuity knots keep their exact values: snap a stride knot within the
  // merge tolerance onto the discontinuity, otherwise insert it.
  for (double d : nl.second_derivative_discontinuities) {
    if (!(d > -R && d < R)) continue;
    if (d - knots.front() <= kMergeTol || knots.back() - d <= kMergeTol) continue;
    const auto it = std::lower_bound(knots.begin(), knots.end(), d);
    if (it != knots.end() && *it - d <= kMergeTol)
      *it = d;
    else if (it != knots.begin() && d - *(it - 1) <= kMergeTol)
      *(it - 1) = d;
    else
      knots.insert(it, d);
  }
  out.breakpoints = std::move(knots);

  const auto& brk = out.breakpoints;
  out.pieces.reserve(brk.size() + 1);
  // Left ray: asymptote slope through the edge knot value (continuity).
  out.pieces.push_back({nl.cc.asym.d2, nl.value(brk.front()) - nl.cc.asym.d2 * brk.front()});
  for (std::size_t i = 0; i + 1 < brk.size(); ++i)
    out.pieces.push_back(chord(nl, brk[i], brk[i + 1]));
  // Right ray, same treatment.
  out.pieces.push_back({nl.cc.asym.d1, nl.value(brk.back()) - nl.cc.asym.d1 * brk.back()});
  return out;
}

PWLFunction make_pwl(std::vector<double> breakpoints, std::vector<PWLFunction::Piece> pieces,
                     std::string source_name, double target_eps) {
  require(pieces.size() == breakpoints.size() + 1, Errc::precondition,
          "pwl needs exactly breakpoints+1 pieces");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    require(breakpoints[i] > breakpoints[i - 1], Errc::precondition,
            "pwl breakpoints must be strictly increasing");
  PWLFunction out;
  out.breakpoints = std::move(breakpoints);
  out.pieces = std::move(pieces);
  out.target_eps = target_eps;
  out.source_name = std::move(source_name);
  for (std::size_t i = 0; i < out.breakpoints.size(); ++i) {
    const double t = out.breakpoints[i];
    const double lhs = out.pieces[i].slope * t + out.pieces[i].intercept;
    const double rhs = out.pieces[i + 1].slope * t + out.pieces[i + 1].intercept;
    require(std::fabs(lhs - rhs) <= 1e-10, Errc::precondition,
            "pwl pieces disagree at a breakpoint");
  }
  return out;
}

std::size_t piece_index(const PWLFunction& pwl, double x) {
  // upper_bound: first breakpoint > x, so x == breakpoint lands in the right piece.
  const auto it = std::upper_bound(pwl.breakpoints.begin(), pwl.breakpoints.end(), x);
  return static_cast<std::size_t>(it - pwl.breakpoints.begin());
}

double eval_pwl(const PWLFunction& pwl, double x) {
  const auto& p = pwl.pieces[piece_index(pwl, x)];
  return p.slope * x + p.intercept;
}

double uniform_error(const Nonlinearity& nl, const PWLFunction& pwl, double half_width,
                     double spacing) {
  require(spacing > 0.0, Errc::precondition, "uniform_error spacing must be positive");
  if (!nl.affine) {
    const double onset = nl.cc.c / std::pow(pwl.target_eps, nl.cc.b);
    require(half_width >= 2.0 * onset * (1.0 - 1e-12), Errc::precondition,
            "uniform_error half_width must cover twice the asymptote onset");
    require(spacing <= knot_stride(nl, pwl.target_eps) / 20.0 * (1.0 + 1e-12),
            Errc::precondition, "uniform_error spacing must be at most gamma/20");
  }
  const auto n = static_cast<long long>(std::ceil(2.0 * half_width / spacing));
  double worst = 0.0;
  for (long long i = 0; i <= n; ++i) {
    const double x = (i == n) ? half_width : -half_width + static_cast<double>(i) * spacing;
    worst = std::fmax(worst, std::fabs(nl.value(x) - eval_pwl(pwl, x)));
  }
  return worst;
}

double continuity_defect(const PWLFunction& pwl) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pwl.breakpoints.size(); ++i) {
    const double t = pwl.breakpoints[i];
    const double lhs = pwl.pieces[i].slope * t + pwl.pieces[i].intercept;
    const double rhs = pwl.pieces[i + 1].slope * t + pwl.pieces[i + 1].intercept;
    worst = std::fmax(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

}  // namespace nlse
