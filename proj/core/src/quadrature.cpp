#include "summability/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "summability/error.hpp"

namespace summability::quadrature {
namespace {

// QUADPACK qk15 abscissae (descending) and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  Result rule;
  double resabs = 0.0;
};

Panel kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex fv1[7];
  Complex fv2[7];

  const Complex fc = f(center);
  Complex resg = fc * kWg[3];
  Complex resk = fc * kWgk[7];
  double resabs = std::abs(fc) * kWgk[7];

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const Complex f1 = f(center - dx);
    const Complex f2 = f(center + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const Complex f1 = f(center - dx);
    const Complex f2 = f(center + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const Complex reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  const double ahalf = std::abs(half);
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }

  auto& s = stats();
  s.evaluations += 15;
  s.intervals += 1;
  return Panel{Result{resk * half, err}, resabs};
}

struct Cell {
  double a = 0.0;
  double b = 0.0;
  int depth = 0;
  Panel panel;
  bool operator<(const Cell& o) const { return panel.rule.error < o.panel.rule.error; }
};

// Global adaptive scheme: keep bisecting the subinterval with the largest error
// estimate until the summed estimate meets tol (or the roundoff floor).
Result adapt(const Integrand& f, double a, double b, double tol, const Options& opts) {
  std::priority_queue<Cell> heap;
  Cell first{a, b, 0, kronrod(f, a, b)};
  Complex value = first.panel.rule.value;
  double error = first.panel.rule.error;
  double floor = 100.0 * kEps * first.panel.resabs;
  heap.push(first);
  std::size_t since_resum = 0;
  while (error > std::max(tol, floor)) {
    const Cell worst = heap.top();
    const bool too_deep = worst.depth >= opts.max_depth;
    const bool too_narrow = worst.b - worst.a <= 8.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b));
    if (too_deep || too_narrow || heap.size() >= opts.max_intervals) {
      std::ostringstream msg;
      msg << "no convergence on [" << worst.a << ", " << worst.b << "], error estimate " << worst.panel.rule.error
          << " (total " << error << ", target " << tol << ")";
      throw QuadratureError(worst.a, worst.b, msg.str());
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Cell left{worst.a, mid, worst.depth + 1, kronrod(f, worst.a, mid)};
    Cell right{mid, worst.b, worst.depth + 1, kronrod(f, mid, worst.b)};
    value += left.panel.rule.value + right.panel.rule.value - worst.panel.rule.value;
    error += left.panel.rule.error + right.panel.rule.error - worst.panel.rule.error;
    floor += 100.0 * kEps * (left.panel.resabs + right.panel.resabs - worst.panel.resabs);
    heap.push(left);
    heap.push(right);
    if (++since_resum == 64) {
      // refresh the running sums so cancellation cannot stall the loop
      since_resum = 0;
      auto copy = heap;
      value = {};
      error = 0.0;
      floor = 0.0;
      while (!copy.empty()) {
        value += copy.top().panel.rule.value;
        error += copy.top().panel.rule.error;
        floor += 100.0 * kEps * copy.top().panel.resabs;
        copy.pop();
      }
    }
  }
  return Result{value, error};
}

}  // namespace

Stats& stats() noexcept {
  thread_local Stats s;
  return s;
}

Result gauss_kronrod15(const Integrand& f, double a, double b) { return kronrod(f, a, b).rule; }

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
  if (!(b > a)) return Result{};
  return adapt(f, a, b, opts.abs_tol, opts);
}

Result integrate_panels(const Integrand& f, double a, double b, const BreakFn& next_break,
                        const Options& opts) {
  if (!(b > a)) return Result{};
  if (!next_break) return integrate(f, a, b, opts);
  const double density = opts.abs_tol / (b - a);
  Result total;
  double lo = a;
  while (lo < b) {
    double hi = next_break(lo);
    if (!(hi > lo)) hi = b;  // degenerate hint: finish in one panel
    hi = std::min(hi, b);
    const Result r = adapt(f, lo, hi, density * (hi - lo), opts);
    total.value += r.value;
    total.error += r.error;
    lo = hi;
  }
  return total;
}

}  // namespace summability::quadrature
