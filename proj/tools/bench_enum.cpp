// Benchmark of the enumeration kernels: exact-rational serial reference vs
// the modular int64 kernel at one thread and at the full thread count. The
// three runs must agree exactly; timings are wall clock.

#include "npr/enumerate.hpp"
#include "npr/group.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using npr::ElementSet;
using npr::Int;

double run_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

constexpr std::uint64_t kBudget = 1ull << 27;

struct Row {
  std::string name;
  double serial_ms;
  double one_ms;
  double many_ms;
  bool agree;
};

Row bench_npr(const std::string& name, const ElementSet& e, const Int& n) {
  Row row{name, 0, 0, 0, true};
  bool r_serial = false, r_one = false, r_many = false;
  row.serial_ms =
      run_ms([&] { r_serial = npr::brute_force_check_serial(e, n, kBudget); });
  set_threads(1);
  row.one_ms = run_ms([&] { r_one = npr::brute_force_check(e, n, kBudget); });
  set_threads(max_threads());
  row.many_ms = run_ms([&] { r_many = npr::brute_force_check(e, n, kBudget); });
  row.agree = (r_serial == r_one) && (r_one == r_many);
  return row;
}

Row bench_eps(const std::string& name, const ElementSet& e, const Int& m) {
  Row row{name, 0, 0, 0, true};
  npr::KroneckerEstimate a, b, c;
  row.serial_ms =
      run_ms([&] { a = npr::weak_kronecker_eps_serial(e, m, kBudget); });
  set_threads(1);
  row.one_ms = run_ms([&] { b = npr::weak_kronecker_eps(e, m, kBudget); });
  set_threads(max_threads());
  row.many_ms = run_ms([&] { c = npr::weak_kronecker_eps(e, m, kBudget); });
  row.agree = a.worst_distance == b.worst_distance &&
              b.worst_distance == c.worst_distance &&
              a.worst_phi == b.worst_phi && b.worst_phi == c.worst_phi;
  return row;
}

}  // namespace

int main() {
  std::vector<Row> rows;

  {
    ElementSet e = npr::make_element_set(
        npr::parse_group_spec("Z/8*Z/8*Z/8"),
        std::vector<std::vector<Int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    rows.push_back(bench_npr("npr Z/8^3 basis s=3 N=8", e, 8));
  }
  {
    ElementSet e = npr::make_element_set(
        npr::parse_group_spec("Z/16*Z/16"),
        std::vector<std::vector<Int>>{{1, 0}, {0, 1}, {1, 1}});
    rows.push_back(bench_npr("npr Z/16*Z/16 s=3 N=16", e, 16));
  }
  {
    ElementSet e = npr::make_element_set(
        npr::parse_group_spec("Z/12*Z/12"),
        std::vector<std::vector<Int>>{{1, 0}, {0, 1}});
    rows.push_back(bench_eps("eps Z/12*Z/12 s=2 M=24", e, 24));
  }
  {
    ElementSet e = npr::make_element_set(
        npr::parse_group_spec("Z/6*Z/6*Z/6"),
        std::vector<std::vector<Int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    rows.push_back(bench_eps("eps Z/6*Z/6*Z/6 s=3 M=12", e, 12));
  }

  std::printf("%-28s %12s %12s %12s %9s %7s\n", "case", "serial ms",
              "int64 x1 ms", "int64 xT ms", "speedup", "agree");
  bool all_agree = true;
  for (const Row& r : rows) {
    all_agree = all_agree && r.agree;
    std::printf("%-28s %12.1f %12.1f %12.1f %8.2fx %7s\n", r.name.c_str(),
                r.serial_ms, r.one_ms, r.many_ms,
                r.many_ms > 0 ? r.one_ms / r.many_ms : 0.0,
                r.agree ? "yes" : "NO");
  }
  std::printf("threads: %d\n", max_threads());
  return all_agree ? 0 : 1;
}
