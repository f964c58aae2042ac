// Wall-clock comparison of the serial reference kernels against the
// OpenMP paths: diagonal profile evaluation and the taxonomy scan.
// Cap workers with SOFTWALL_THREADS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "softwall/cylkernel.hpp"
#include "softwall/parallel.hpp"
#include "softwall/semiclassical.hpp"

using namespace softwall;
namespace ck = softwall::cylkernel;
namespace sc = softwall::semiclassical;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return seconds(t0, t1);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", thread_budget());

  {
    auto dir = PhaseShiftFn::dirichlet(1.0);
    std::vector<double> zs;
    for (int i = 0; i < 24; ++i) zs.push_back(-8.0 + 0.25 * i);
    ck::QuadratureConfig cfg;
    ck::ProfileResult ps, pp;
    double ts = timed([&] { ps = ck::compute_profile(dir, zs, cfg, Exec::Serial); });
    double tp = timed([&] { pp = ck::compute_profile(dir, zs, cfg, Exec::Parallel); });
    bool identical = true;
    for (size_t i = 0; i < zs.size(); ++i)
      if (ps.tbar[i] != pp.tbar[i] || ps.err[i] != pp.err[i]) identical = false;
    std::printf("profile (%zu pts, Dirichlet): serial %.3f s, parallel %.3f s, "
                "speedup %.2fx, identical=%s\n",
                zs.size(), ts, tp, ts / tp, identical ? "yes" : "NO");
  }

  {
    std::vector<sc::Taxonomy> a, b;
    double ts = timed([&] {
      a = sc::taxonomy_scan(0.05, 5.0, 600, 0.05, 8.0, 600, Exec::Serial);
    });
    double tp = timed([&] {
      b = sc::taxonomy_scan(0.05, 5.0, 600, 0.05, 8.0, 600, Exec::Parallel);
    });
    bool identical = a.size() == b.size();
    for (size_t i = 0; identical && i < a.size(); ++i)
      identical = a[i].count == b[i].count && a[i].rho == b[i].rho &&
                  a[i].T == b[i].T;
    std::printf("taxonomy scan (600x600): serial %.3f s, parallel %.3f s, "
                "speedup %.2fx, identical=%s\n",
                ts, tp, ts / tp, identical ? "yes" : "NO");
  }
  return 0;
}
