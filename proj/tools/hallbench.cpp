// Benchmark of the OpenMP table-building kernels against the serial
// reference path.  The per-thread labelling cache is cleared before each
// timed run, and outputs are compared for exact equality.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "hall/hallnum.hpp"

using namespace hall;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

void bench_cell(const Quiver& q, const DimVec& d, uint32_t p) {
  EnumLimits lim;
  label_cache_clear();
  auto s0 = Clock::now();
  auto serial = enumerate_cell_serial(q, d, p, lim);
  auto s1 = Clock::now();
  label_cache_clear();
  auto p0 = Clock::now();
  auto parallel = enumerate_cell_parallel(q, d, p, lim);
  auto p1 = Clock::now();
  bool equal = serial.size() == parallel.size();
  for (size_t i = 0; equal && i < serial.size(); ++i)
    equal = serial[i].label == parallel[i].label && serial[i].count == parallel[i].count &&
            serial[i].rep.maps == parallel[i].rep.maps;
  double ts = seconds(s0, s1), tp = seconds(p0, p1);
  printf("cell %-10s p=%-3u  serial %7.3fs  parallel %7.3fs  speedup %4.2fx  %s\n",
         dim_to_string(d).c_str(), p, ts, tp, ts / tp,
         equal ? "outputs equal" : "OUTPUTS DIFFER");
}

void bench_table(const Quiver& q, const DimVec& maxdim, int sum_bound, const char* name) {
  HallTableOptions opt;
  opt.max_dim = maxdim;
  opt.sum_bound = sum_bound;
  label_cache_clear();
  auto s0 = Clock::now();
  HallTable serial = build_hall_table_serial(q, opt);
  auto s1 = Clock::now();
  label_cache_clear();
  opt.parallel = true;
  auto p0 = Clock::now();
  HallTable parallel = build_hall_table(q, opt);
  auto p1 = Clock::now();
  bool equal = serial.to_json() == parallel.to_json();
  double ts = seconds(s0, s1), tp = seconds(p0, p1);
  printf("table %-10s serial %7.3fs  parallel %7.3fs  speedup %4.2fx  %s\n", name, ts, tp,
         ts / tp, equal ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
  printf("threads: %d\n", omp_get_max_threads());
  Quiver a2 = Quiver::parse("vertices 2\narrow 1 2\n");
  Quiver a3 = Quiver::parse("vertices 3\narrow 1 2\narrow 2 3\n");

  bench_cell(a2, {2, 2}, 13);
  bench_cell(a2, {2, 2}, 17);
  bench_cell(a3, {1, 2, 1}, 13);

  bench_table(a2, {2, 2}, -1, "A2 (2,2)");
  bench_table(a2, {4, 4}, 4, "A2 sum<=4");
  bench_table(a3, {1, 1, 1}, -1, "A3 (1,1,1)");
  return 0;
}
