#pragma once
// Minimal dense kernels over std::vector<double>.  Matrices are row-major.
// Shapes here are desk-scale (n <= a few thousand); plain loops under -O2 are
// enough and keep results bit-reproducible.

#include <span>
#include <vector>

namespace nlse::la {

double dot(std::span<const double> x, std::span<const double> y);
double nrm2(std::span<const double> x);

// y = A x with A row-major rows x cols.
void gemv(std::span<const double> a, int rows, int cols, std::span<const double> x,
          std::span<double> y);

// y = A^T x with A row-major rows x cols (x has rows entries, y cols).
void gemv_t(std::span<const double> a, int rows, int cols, std::span<const double> x,
            std::span<double> y);

void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scal(double alpha, std::span<double> x);

}  // namespace nlse::la
