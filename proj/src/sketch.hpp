#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nlse {

// Dense Gaussian sketch: m x n, entries iid N(0, 1/m), fully determined by
// (m, n, seed).  Entry (i, j) is drawn from counter i*n + j of the stream, so
// the matrix is independent of evaluation order.
struct SketchMatrix {
  int m = 0;
  int n = 0;
  std::vector<double> entries;  // row-major, size m*n
  std::uint64_t seed = 0;
  std::string distribution = "gaussian";
};

// Which embedding-dimension formula to use.  The argument of the logarithm
// and the eps in the denominator differ by regime:
//   additive:  ceil(C*(k*ln(n/eps2) + ln(1/delta)) / eps1^2)
//   srec:      same formula as additive
//   piecewise: ceil(C*(k*ln(n*t)    + ln(1/delta)) / eps^2)   (t pieces)
//   relative:  ceil(C*(k*ln(n/eps)  + ln(1/delta)) / eps^2)
enum class DimMode { additive, piecewise, relative, srec };

struct DimSpec {
  DimMode mode = DimMode::additive;
  int k = 1;           // subspace dimension
  int n = 1;           // ambient dimension
  int t = 1;           // pieces per coordinate map (piecewise mode)
  double eps1 = 0.1;   // multiplicative error (additive / srec)
  double eps2 = 0.1;   // additive error floor (additive / srec)
  double eps = 0.1;    // relative / piecewise distortion target
  double delta = 0.1;  // failure probability
  double C = 1.0;      // leading big-O constant
};

// Calibrated default used by the experiment drivers (see README).
inline constexpr double kDefaultDimConstant = 6.0;

struct DimResult {
  int m = 0;           // final (clamped) embedding dimension
  int m_raw = 0;       // value before clamping to [1, n]
  bool clamped = false;
};

// Evaluates the mode formula above and clamps the result into [1, n]
// (an embedding wider than the ambient dimension is replaced by n and
// flagged).  Throws Errc::invalid_argument on out-of-range fields.
DimResult required_dim(const DimSpec& spec);

// Sample the m x n Gaussian sketch for `seed`.  Refuses to allocate more
// than 2^28 entries.
SketchMatrix sample_sketch(int m, int n, std::uint64_t seed);

// y = S x  (y has length m, x length n).
void apply(const SketchMatrix& S, const double* x, double* y);
std::vector<double> apply(const SketchMatrix& S, const std::vector<double>& x);

// Largest singular value by power iteration on S^T S with a deterministic
// start vector derived from `seed`.  iters must be >= 50.
double spectral_norm(const SketchMatrix& S, int iters = 100);

}  // namespace nlse
