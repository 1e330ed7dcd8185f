#include "iassr/quadrature.hpp"

#include <cmath>

namespace iassr {

namespace {

using cd = std::complex<double>;

// Kronrod nodes on [0,1] (symmetric), odd indices are the Gauss nodes.
constexpr double kXk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kWk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
  cd kronrod;
  double err;
  double l1;  // Kronrod estimate of the integral of |f|
};

Panel gk15(const std::function<cd(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cd fc = f(c);
  cd k = fc * kWk[7];
  cd g = fc * kWg[3];
  double l1 = std::abs(fc) * kWk[7];
  for (int i = 0; i < 7; ++i) {
    const cd lo = f(c - h * kXk[i]), hi = f(c + h * kXk[i]);
    k += (lo + hi) * kWk[i];
    l1 += (std::abs(lo) + std::abs(hi)) * kWk[i];
    if (i % 2 == 1) g += (lo + hi) * kWg[i / 2];
  }
  return {k * h, std::abs((k - g) * h), l1 * std::abs(h)};
}

cd adapt(const std::function<cd(double)>& f, double a, double b, const Panel& p, double tol,
         int depth, const QuadratureOptions& opt) {
  if (p.err <= tol || depth >= opt.max_depth) return p.kronrod;
  const double m = 0.5 * (a + b);
  const Panel l = gk15(f, a, m), r = gk15(f, m, b);
  return adapt(f, a, m, l, 0.5 * tol, depth + 1, opt) + adapt(f, m, b, r, 0.5 * tol, depth + 1, opt);
}

}  // namespace

std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, double a,
                               double b, const QuadratureOptions& opt) {
  if (a == b) return {0.0, 0.0};
  const Panel whole = gk15(f, a, b);
  // Relative to the integral of |f|, which is robust to oscillatory cancellation.
  const double scale = std::max(whole.l1, std::abs(whole.kronrod));
  return adapt(f, a, b, whole, std::max(opt.rel_tol * scale, opt.abs_tol), 0, opt);
}

}  // namespace iassr
