#include "npr/enumerate.hpp"

#include "npr/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace npr {

namespace {

constexpr std::uint64_t kDefaultBudget = 1000000;
constexpr std::int64_t kModulusLimit = std::int64_t(1) << 31;

struct Table {
  std::int64_t common;            // common denominator LL
  std::uint64_t group_order;      // |G|
  std::size_t s;                  // set size
  std::vector<std::int64_t> ev;   // ev[x*s + j] = numerator of gamma_j(x) over LL
};

std::uint64_t to_u64(const Int& v) { return v.convert_to<std::uint64_t>(); }

/**
 * Shared precondition handling: rank 0, budget, int64 safety. `scale` is the
 * grid modulus (N or M) whose reciprocals must be representable over the
 * common denominator.
 */
Table build_table(const ElementSet& e, const Int& scale, const Int& points,
                  std::uint64_t max_points) {
  const GroupSpec& spec = e.spec;
  if (spec.rank != 0)
    fail(Error::Kind::Precondition,
         "exhaustive enumeration requires a finite (rank-0) group");
  const std::uint64_t budget = enumeration_budget(max_points);
  if (points > budget) {
    std::ostringstream msg;
    msg << "enumeration budget exceeded: " << points
        << " evaluation points, budget " << budget
        << " (set NPR_MAX_ENUM or pass a larger bound)";
    fail(Error::Kind::Bound, msg.str());
  }
  Int big_l = 1;
  for (const Int& m : spec.torsion) big_l = lcm(big_l, m);
  big_l = lcm(big_l, scale);
  Int order = *spec.total_order();
  if (big_l >= kModulusLimit || order >= kModulusLimit)
    fail(Error::Kind::Bound,
         "enumeration instance too large for the modular kernel");

  Table t;
  t.common = big_l.convert_to<std::int64_t>();
  t.group_order = to_u64(order);
  t.s = e.size();
  const std::size_t nt = spec.torsion.size();
  std::vector<std::int64_t> mods(nt), weights(t.s * nt);
  for (std::size_t i = 0; i < nt; ++i)
    mods[i] = spec.torsion[i].convert_to<std::int64_t>();
  for (std::size_t j = 0; j < t.s; ++j)
    for (std::size_t i = 0; i < nt; ++i)
      weights[j * nt + i] =
          ((e.elements[j].coords[i] * (big_l / spec.torsion[i])) % big_l)
              .convert_to<std::int64_t>();
  t.ev.assign(t.group_order * t.s, 0);
  const std::int64_t total = static_cast<std::int64_t>(t.group_order);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t x = 0; x < total; ++x) {
    std::int64_t rem = x;
    std::vector<std::int64_t> y(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      y[i] = rem % mods[i];
      rem /= mods[i];
    }
    for (std::size_t j = 0; j < t.s; ++j) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < nt; ++i)
        acc = (acc + weights[j * nt + i] * y[i]) % t.common;
      t.ev[static_cast<std::size_t>(x) * t.s + j] = acc;
    }
  }
  return t;
}

Int int_pow(const Int& base, std::size_t e) {
  Int r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

/** Big-endian digits of idx in the given base (lex order == index order). */
std::vector<std::int64_t> digits_of(std::uint64_t idx, std::int64_t base,
                                    std::size_t count) {
  std::vector<std::int64_t> d(count);
  for (std::size_t j = count; j-- > 0;) {
    d[j] = static_cast<std::int64_t>(idx % base);
    idx /= base;
  }
  return d;
}

}  // namespace

std::uint64_t enumeration_budget(std::uint64_t requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("NPR_MAX_ENUM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

bool brute_force_check(const ElementSet& e, const Int& n,
                       std::uint64_t max_points) {
  if (n < 1) fail(Error::Kind::Input, "modulus must be >= 1");
  const std::size_t s = e.size();
  Int order = 1;
  if (e.spec.rank == 0) order = *e.spec.total_order();
  Table t = build_table(e, n, int_pow(n, s) * order, max_points);
  if (s == 0) return true;  // the empty function is evaluation at any point
  const std::int64_t nn = n.convert_to<std::int64_t>();
  const std::int64_t unit = t.common / nn;  // numerator of 1/N over LL
  const std::uint64_t phi_count = to_u64(int_pow(n, s));
  std::atomic<bool> ok{true};
  const std::int64_t total = static_cast<std::int64_t>(phi_count);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::int64_t idx = 0; idx < total; ++idx) {
    if (!ok.load(std::memory_order_relaxed)) continue;
    std::vector<std::int64_t> c =
        digits_of(static_cast<std::uint64_t>(idx), nn, s);
    for (auto& v : c) v = v * unit % t.common;
    bool hit = false;
    for (std::uint64_t x = 0; x < t.group_order && !hit; ++x) {
      const std::int64_t* row = &t.ev[x * t.s];
      bool match = true;
      for (std::size_t j = 0; j < s && match; ++j) match = (row[j] == c[j]);
      hit = match;
    }
    if (!hit) ok.store(false, std::memory_order_relaxed);
  }
  return ok.load();
}

bool brute_force_check_serial(const ElementSet& e, const Int& n,
                              std::uint64_t max_points) {
  if (n < 1) fail(Error::Kind::Input, "modulus must be >= 1");
  const GroupSpec& spec = e.spec;
  if (spec.rank != 0)
    fail(Error::Kind::Precondition,
         "exhaustive enumeration requires a finite (rank-0) group");
  const std::size_t s = e.size();
  const Int order = *spec.total_order();
  const Int points = int_pow(n, s) * order;
  if (points > Int(enumeration_budget(max_points)))
    fail(Error::Kind::Bound, "enumeration budget exceeded");
  const std::size_t nt = spec.torsion.size();
  // Odometer over candidate functions c in [0, N)^s.
  std::vector<Int> c(s, 0);
  while (true) {
    bool hit = false;
    std::vector<Int> y(nt, 0);
    while (!hit) {
      DualPoint x{{}, y};
      bool match = true;
      for (std::size_t j = 0; j < s && match; ++j)
        match = (eval_pair(spec, e.elements[j], x).value == Rat(c[j], n));
      hit = match;
      // advance x
      std::size_t i = 0;
      for (; i < nt; ++i) {
        if (++y[i] < spec.torsion[i]) break;
        y[i] = 0;
      }
      if (i == nt) break;
    }
    if (!hit) return false;
    std::size_t j = s;
    for (; j-- > 0;) {
      if (++c[j] < n) break;
      c[j] = 0;
      if (j == 0) return true;
    }
    if (s == 0) return true;
  }
}

KroneckerEstimate weak_kronecker_eps(const ElementSet& e, const Int& m,
                                     std::uint64_t max_points) {
  if (m < 1) fail(Error::Kind::Input, "grid modulus must be >= 1");
  const std::size_t s = e.size();
  Int order = 1;
  if (e.spec.rank == 0) order = *e.spec.total_order();
  Table t = build_table(e, m, int_pow(m, s) * order, max_points);
  KroneckerEstimate est;
  est.grid = m;
  if (s == 0) {
    est.worst_distance = 0;
    est.epsilon = 0.0;
    return est;
  }
  const std::int64_t mm = m.convert_to<std::int64_t>();
  const std::int64_t unit = t.common / mm;
  const std::uint64_t phi_count = to_u64(int_pow(m, s));
  const std::int64_t total = static_cast<std::int64_t>(phi_count);
  std::int64_t best_d = -1;
  std::uint64_t best_idx = 0;
#if defined(_OPENMP)
#pragma omp parallel
#endif
  {
    std::int64_t loc_d = -1;
    std::uint64_t loc_idx = 0;
#if defined(_OPENMP)
#pragma omp for schedule(static) nowait
#endif
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::vector<std::int64_t> c =
          digits_of(static_cast<std::uint64_t>(idx), mm, s);
      for (auto& v : c) v = v * unit % t.common;
      std::int64_t dmin = t.common;  // > any circular distance numerator
      for (std::uint64_t x = 0; x < t.group_order; ++x) {
        const std::int64_t* row = &t.ev[x * t.s];
        std::int64_t dmax = 0;
        for (std::size_t j = 0; j < s; ++j) {
          std::int64_t diff = row[j] - c[j];
          if (diff < 0) diff = -diff;
          std::int64_t d = std::min(diff, t.common - diff);
          if (d > dmax) dmax = d;
        }
        if (dmax < dmin) dmin = dmax;
        if (dmin == 0) break;
      }
      if (dmin > loc_d ||
          (dmin == loc_d && static_cast<std::uint64_t>(idx) < loc_idx)) {
        loc_d = dmin;
        loc_idx = static_cast<std::uint64_t>(idx);
      }
    }
#if defined(_OPENMP)
#pragma omp critical
#endif
    {
      if (loc_d > best_d || (loc_d == best_d && loc_idx < best_idx)) {
        best_d = loc_d;
        best_idx = loc_idx;
      }
    }
  }
  est.worst_distance = Rat(best_d, t.common);
  est.epsilon = chord_length(est.worst_distance);
  std::vector<std::int64_t> digits = digits_of(best_idx, mm, s);
  est.worst_phi.assign(digits.begin(), digits.end());
  return est;
}

KroneckerEstimate weak_kronecker_eps_serial(const ElementSet& e, const Int& m,
                                            std::uint64_t max_points) {
  if (m < 1) fail(Error::Kind::Input, "grid modulus must be >= 1");
  const GroupSpec& spec = e.spec;
  if (spec.rank != 0)
    fail(Error::Kind::Precondition,
         "exhaustive enumeration requires a finite (rank-0) group");
  const std::size_t s = e.size();
  const Int points = int_pow(m, s) * *spec.total_order();
  if (points > Int(enumeration_budget(max_points)))
    fail(Error::Kind::Bound, "enumeration budget exceeded");
  const std::size_t nt = spec.torsion.size();
  KroneckerEstimate est;
  est.grid = m;
  Rat best_d = -1;
  std::vector<Int> best_phi;
  std::vector<Int> c(s, 0);
  while (true) {
    Rat dmin = 1;
    std::vector<Int> y(nt, 0);
    while (true) {
      DualPoint x{{}, y};
      Rat dmax = 0;
      for (std::size_t j = 0; j < s; ++j) {
        Rat d = circular_distance(eval_pair(spec, e.elements[j], x),
                                  UnitRational(Rat(c[j], m)));
        if (d > dmax) dmax = d;
      }
      if (dmax < dmin) dmin = dmax;
      std::size_t i = 0;
      for (; i < nt; ++i) {
        if (++y[i] < spec.torsion[i]) break;
        y[i] = 0;
      }
      if (i == nt) break;
    }
    if (s == 0) dmin = 0;
    if (dmin > best_d) {
      best_d = dmin;
      best_phi = c;
    }
    if (s == 0) break;
    std::size_t j = s;
    bool done = false;
    for (; j-- > 0;) {
      if (++c[j] < m) break;
      c[j] = 0;
      if (j == 0) done = true;
    }
    if (done) break;
  }
  est.worst_distance = best_d;
  est.epsilon = chord_length(best_d);
  est.worst_phi = std::move(best_phi);
  return est;
}

}  // namespace npr
