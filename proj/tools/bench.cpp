// Timing harness for the OpenMP kernels against their serial reference
// twins. Also asserts the two paths agree bit for bit, since that is the
// whole point of keeping the reference implementation around.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chevron/config.hpp"
#include "chevron/fdops.hpp"
#include "chevron/pde.hpp"
#include "chevron/reductions.hpp"
#include "chevron/ref_kernels.hpp"

using namespace chevron;

namespace {

double g_sink = 0.0;  // defeats dead-code elimination

template <typename F>
double best_ms(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* kernel, int n, double serial, double parallel, bool match) {
  std::printf("%-16s %5dx%-5d %10.3f %12.3f %9.2fx   %s\n", kernel, n, n, serial, parallel,
              serial / parallel, match ? "bitwise match" : "MISMATCH");
}

template <typename T>
bool same_bits(const Field<T>& a, const Field<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

void bench_size(int n) {
  Grid2D g(n, n, 4.0, 4.0);
  IcSpec ic;
  ic.kind = IcSpec::Kind::Random;
  ic.amplitude = 0.8;
  SimState s = make_initial(ic, g, 42);
  ChevronParams p;
  p.tau = 1.0;
  p.D1 = 1.0;
  p.D2 = 0.5;
  p.c1 = 0.5;
  p.c2 = 0.5;
  p.h = 0.5;
  p.beta = 0.2;

  const int reps = std::clamp(static_cast<int>(2e7 / (static_cast<double>(n) * n)), 3, 50);

  {
    ComplexField out_p = laplacian(s.A);
    ComplexField out_s = ref::laplacian(s.A);
    double tp = best_ms([&] { g_sink += laplacian(s.A).v[0].real(); }, reps);
    double ts = best_ms([&] { g_sink += ref::laplacian(s.A).v[0].real(); }, reps);
    row("laplacian A", n, ts, tp, same_bits(out_p, out_s));
  }
  {
    ComplexField out_p = d_dy(s.A);
    ComplexField out_s = ref::d_dy_complex(s.A);
    double tp = best_ms([&] { g_sink += d_dy(s.A).v[0].imag(); }, reps);
    double ts = best_ms([&] { g_sink += ref::d_dy_complex(s.A).v[0].imag(); }, reps);
    row("d/dy A", n, ts, tp, same_bits(out_p, out_s));
  }
  {
    RhsPair out_p = rhs(s, p);
    RhsPair out_s = ref::rhs(s, p);
    double tp = best_ms([&] { g_sink += rhs(s, p).dphi.v[0]; }, reps);
    double ts = best_ms([&] { g_sink += ref::rhs(s, p).dphi.v[0]; }, reps);
    row("full rhs", n, ts, tp, same_bits(out_p.dA, out_s.dA) && same_bits(out_p.dphi, out_s.dphi));
  }
  {
    double vp = l2_norm_sq(s.A);
    double vs = ref::l2_norm_sq(s.A);
    double tp = best_ms([&] { g_sink += l2_norm_sq(s.A); }, reps);
    double ts = best_ms([&] { g_sink += ref::l2_norm_sq(s.A); }, reps);
    row("l2 norm A", n, ts, tp, vp == vs);
  }
  {
    double vp = grad_norm_sq(s.A);
    double vs = ref::grad_norm_sq(s.A);
    double tp = best_ms([&] { g_sink += grad_norm_sq(s.A); }, reps);
    double ts = best_ms([&] { g_sink += ref::grad_norm_sq(s.A); }, reps);
    row("grad energy A", n, ts, tp, vp == vs);
  }
  {
    // No serial twin for the sine solve; pin the thread count instead.
    SineSolver solver(g, p.D1, p.D2);
    const int solver_reps = std::max(3, reps / 4);
    double tp = best_ms([&] { g_sink += solver.solve(10.0, s.phi).v[0]; }, solver_reps);
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    RealField one_thread = solver.solve(10.0, s.phi);
    double ts = best_ms([&] { g_sink += solver.solve(10.0, s.phi).v[0]; }, solver_reps);
    omp_set_num_threads(saved);
    RealField many = solver.solve(10.0, s.phi);
    row("sine solve phi", n, ts, tp, same_bits(one_thread, many));
#else
    row("sine solve phi", n, tp, tp, true);
#endif
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool big = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--big") big = true;
  }
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP, parallel path runs serially\n");
#endif
  std::printf("%-16s %-11s %10s %12s %10s\n", "kernel", "size", "serial ms", "parallel ms", "speedup");
  bench_size(128);
  bench_size(256);
  if (big) bench_size(512);
  std::printf("(checksum %g)\n", g_sink);
  return 0;
}
