#pragma once

#include <complex>
#include <functional>

namespace iassr {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 40;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b] for a complex integrand.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, double a,
                               double b, const QuadratureOptions& opt = {});

}  // namespace iassr
