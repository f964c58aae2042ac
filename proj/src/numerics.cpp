#include "softwall/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace softwall::num {

namespace {

struct GlRule {
  std::vector<double> x, w;
};

// Nodes are roots of P_n found by Newton from the Chebyshev estimate.
GlRule make_gl_rule(int n) {
  GlRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = 2.0 / ((1 - z * z) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

const GlRule& gl_rule(int n) {
  static std::map<int, GlRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl_rule(n)).first;
  return it->second;
}

struct Kahan {
  double sum = 0, c = 0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

template <class T, class F>
T gl15(F&& f, double a, double b) {
  const auto& r = gl_rule(15);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  T sum{};
  for (int i = 0; i < 15; ++i) sum += r.w[i] * f(mid + half * r.x[i]);
  return half * sum;
}

// Local adaptivity: GL15 on a panel vs GL15 on its halves.  The initial
// panel list is sized below one local wavelength so the comparison is
// meaningful for oscillatory integrands.
template <class T, class F>
void adapt_panel(F&& f, double a, double b, double tol, int depth,
                 int max_depth, T& acc, double& err_acc, long& evals,
                 long max_evals) {
  T whole = gl15<T>(f, a, b);
  double m = 0.5 * (a + b);
  T left = gl15<T>(f, a, m);
  T right = gl15<T>(f, m, b);
  evals += 45;
  if (evals > max_evals)
    throw ConvergenceError("integrate_panels: eval budget exhausted",
                           std::abs(acc + left + right), 1e300);
  double e = std::abs(left + right - whole);
  // Width floor: below it the halving comparison only sees roundoff.
  bool floor_hit = (b - a) < 1e-12 * (std::abs(a) + std::abs(b) + 1e-6);
  if (e <= tol || depth >= max_depth || floor_hit || !(e == e)) {
    acc += left + right;
    err_acc += e == e ? e : 0.0;
    return;
  }
  adapt_panel(f, a, m, 0.5 * tol, depth + 1, max_depth, acc, err_acc, evals,
              max_evals);
  adapt_panel(f, m, b, 0.5 * tol, depth + 1, max_depth, acc, err_acc, evals,
              max_evals);
}

std::vector<double> initial_panels(double a, double b, const PanelOptions& opt) {
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double bp : opt.breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> edges;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    double lo = cuts[k], hi = cuts[k + 1];
    edges.push_back(lo);
    double x = lo;
    while (x < hi) {
      double w = hi - lo;
      if (opt.local_freq) {
        double fr = std::max(opt.local_freq(x), 1e-30);
        w = std::min(w, 0.9 * 2 * pi / fr);
      }
      w = std::max(w, (hi - lo) * 1e-9);
      x = std::min(x + w, hi);
      edges.push_back(x);
    }
    if (edges.back() != hi) edges.push_back(hi);
  }
  return edges;
}

}  // namespace

const std::vector<double>& gl_nodes(int n) { return gl_rule(n).x; }
const std::vector<double>& gl_weights(int n) { return gl_rule(n).w; }

IntegralResult integrate_panels(const std::function<double(double)>& f,
                                double a, double b, const PanelOptions& opt) {
  if (a == b) return {0, 0};
  auto edges = initial_panels(a, b, opt);
  const size_t n_panels = edges.size() - 1;
  Kahan total;
  double err = 0;
  long evals = 0;
  for (size_t k = 0; k < n_panels; ++k) {
    double acc = 0, e = 0;
    double tol = std::max(opt.abs_tol / double(n_panels), 1e-300);
    adapt_panel<double>(f, edges[k], edges[k + 1], tol, 0, opt.max_depth, acc,
                        e, evals, opt.max_evals);
    total.add(acc);
    err += e;
  }
  return {total.sum, err + 1e-16 * std::abs(total.sum)};
}

ComplexIntegral integrate_panels_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const PanelOptions& opt) {
  if (a == b) return {{0, 0}, 0};
  auto edges = initial_panels(a, b, opt);
  const size_t n_panels = edges.size() - 1;
  std::complex<double> total = 0;
  double err = 0;
  long evals = 0;
  for (size_t k = 0; k < n_panels; ++k) {
    std::complex<double> acc = 0;
    double e = 0;
    double tol = std::max(opt.abs_tol / double(n_panels), 1e-300);
    adapt_panel<std::complex<double>>(f, edges[k], edges[k + 1], tol, 0,
                                      opt.max_depth, acc, e, evals,
                                      opt.max_evals);
    total += acc;
    err += e;
  }
  return {total, err + 1e-16 * std::abs(total)};
}

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a, const SemiInfOptions& opt) {
  Kahan total;
  double err = 0;
  double x = a;
  long evals = 0;
  while (true) {
    double bound = opt.decay_bound(x);
    if (bound < opt.abs_tol) {
      err += bound;
      break;
    }
    if (x > opt.x_max)
      throw ConvergenceError(
          "integrate_semi_infinite: tolerance not met within x_max", total.sum,
          bound + err);
    double fr = opt.local_freq ? std::max(opt.local_freq(x), 1e-30) : 1e-30;
    double w = std::min(0.9 * 2 * pi / fr, 0.25 * (std::abs(x) + 1));
    double acc = 0, e = 0;
    adapt_panel<double>(f, x, x + w, opt.abs_tol * 1e-2, 0, 40, acc, e, evals,
                        400000000L);
    total.add(acc);
    err += e;
    x += w;
  }
  return {total.sum, err};
}

Extrapolation extrapolate_to_zero(const std::vector<double>& s,
                                  const std::vector<double>& f) {
  const size_t n = s.size();
  if (n == 0 || f.size() != n)
    throw std::invalid_argument("extrapolate_to_zero: bad ladder");
  if (n == 1) return {f[0], std::abs(f[0])};
  std::vector<double> t = f;
  double last = t[0], residual = 0;
  // Neville tableau evaluated at s = 0.
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = 0; i + j < n; ++i) {
      t[i] = t[i + 1] + (t[i + 1] - t[i]) * s[i + j] / (s[i] - s[i + j]);
    }
    residual = std::abs(t[0] - last);
    last = t[0];
  }
  return {t[0], residual};
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("CubicSpline: need >= 2 matching points");
  for (size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1]))
      throw std::invalid_argument("CubicSpline: x not increasing");
  y2_.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
    double p = sig * y2_[i - 1] + 2.0;
    y2_[i] = (sig - 1.0) / p;
    u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
           (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
    u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
  }
  for (size_t k = n - 1; k-- > 1;) y2_[k] = y2_[k] * y2_[k + 1] + u[k];
  y2_[0] = y2_[n - 1] = 0.0;
}

size_t CubicSpline::find(double x) const {
  size_t lo = 0, hi = x_.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (x_[mid] > x)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

double CubicSpline::operator()(double x) const {
  size_t i = find(x);
  double h = x_[i + 1] - x_[i];
  double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * y2_[i] + (b * b * b - b) * y2_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double x) const {
  size_t i = find(x);
  double h = x_[i + 1] - x_[i];
  double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h -
         (3 * a * a - 1) / 6.0 * h * y2_[i] + (3 * b * b - 1) / 6.0 * h * y2_[i + 1];
}

std::array<double, 2> ode_integrate(const Deriv2& f, double x0, double x1,
                                    std::array<double, 2> y, const OdeOptions& opt) {
  if (x0 == x1) return y;
  const double dir = x1 > x0 ? 1.0 : -1.0;
  double span = std::abs(x1 - x0);
  double h = opt.h_init > 0 ? opt.h_init : span / 100;
  h = std::min(h, span);
  double x = x0;
  long steps = 0;
  auto norm = [](const std::array<double, 2>& v) {
    return std::max(std::abs(v[0]), std::abs(v[1]));
  };
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  while (dir * (x1 - x) > 0) {
    h = std::min(h, std::abs(x1 - x));
    if (++steps > opt.max_steps)
      throw ConvergenceError("ode_integrate: step limit", y[0], 1e300);
    double hs = dir * h;
    auto k1 = f(x, y);
    auto ev = [&](double c, const std::array<double, 2>& dy) {
      return f(x + c * hs, {y[0] + hs * dy[0], y[1] + hs * dy[1]});
    };
    auto k2 = ev(c2, {0.2 * k1[0], 0.2 * k1[1]});
    auto k3 = ev(c3, {3.0 / 40 * k1[0] + 9.0 / 40 * k2[0],
                      3.0 / 40 * k1[1] + 9.0 / 40 * k2[1]});
    auto k4 = ev(c4, {44.0 / 45 * k1[0] - 56.0 / 15 * k2[0] + 32.0 / 9 * k3[0],
                      44.0 / 45 * k1[1] - 56.0 / 15 * k2[1] + 32.0 / 9 * k3[1]});
    auto k5 = ev(c5, {19372.0 / 6561 * k1[0] - 25360.0 / 2187 * k2[0] +
                          64448.0 / 6561 * k3[0] - 212.0 / 729 * k4[0],
                      19372.0 / 6561 * k1[1] - 25360.0 / 2187 * k2[1] +
                          64448.0 / 6561 * k3[1] - 212.0 / 729 * k4[1]});
    auto k6 = ev(1.0, {9017.0 / 3168 * k1[0] - 355.0 / 33 * k2[0] +
                           46732.0 / 5247 * k3[0] + 49.0 / 176 * k4[0] -
                           5103.0 / 18656 * k5[0],
                       9017.0 / 3168 * k1[1] - 355.0 / 33 * k2[1] +
                           46732.0 / 5247 * k3[1] + 49.0 / 176 * k4[1] -
                           5103.0 / 18656 * k5[1]});
    std::array<double, 2> y5, dy5;
    for (int i = 0; i < 2; ++i)
      dy5[i] = 35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] + 125.0 / 192 * k4[i] -
               2187.0 / 6784 * k5[i] + 11.0 / 84 * k6[i];
    for (int i = 0; i < 2; ++i) y5[i] = y[i] + hs * dy5[i];
    auto k7 = f(x + hs, y5);
    std::array<double, 2> errv;
    for (int i = 0; i < 2; ++i) {
      double dy4 = 5179.0 / 57600 * k1[i] + 7571.0 / 16695 * k3[i] +
                   393.0 / 640 * k4[i] - 92097.0 / 339200 * k5[i] +
                   187.0 / 2100 * k6[i] + 1.0 / 40 * k7[i];
      errv[i] = hs * (dy5[i] - dy4);
    }
    double sc = opt.abs_tol + opt.rel_tol * std::max(norm(y), norm(y5));
    double e = norm(errv) / sc;
    if (e <= 1.0) {
      x += hs;
      y = y5;
      h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(e, 1e-16), -0.2)));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(e, -0.2));
      if (h < 1e-14 * (std::abs(x) + 1))
        throw ConvergenceError("ode_integrate: step underflow", y[0], 1e300);
    }
  }
  return y;
}

}  // namespace softwall::num
