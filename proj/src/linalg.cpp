#include "linalg.hpp"

#include <cassert>
#include <cmath>

namespace nlse::la {

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double nrm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void gemv(std::span<const double> a, int rows, int cols, std::span<const double> x,
          std::span<double> y) {
  assert(static_cast<int>(x.size()) == cols && static_cast<int>(y.size()) == rows);
  assert(a.size() == static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * cols;
    double s = 0.0;
    for (int j = 0; j < cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void gemv_t(std::span<const double> a, int rows, int cols, std::span<const double> x,
            std::span<double> y) {
  assert(static_cast<int>(x.size()) == rows && static_cast<int>(y.size()) == cols);
  assert(a.size() == static_cast<std::size_t>(rows) * cols);
  for (int j = 0; j < cols; ++j) y[j] = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * cols;
    const double xi = x[i];
    for (int j = 0; j < cols; ++j) y[j] += row[j] * xi;
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scal(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

}  // namespace nlse::la
