#include "hilb2/kernels.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>

#include "hilb2/errors.hpp"
#include "hilb2/parallel.hpp"

namespace hilb2 {

namespace parallel {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads = n < 0 ? 0 : n; }

int threads() {
  int n = g_threads.load();
  return n > 0 ? n : omp_get_max_threads();
}

}  // namespace parallel

namespace kernels {

namespace {

DistanceScan scan_one(const lattice::LinearForm& l, int r) {
  const long a = l.a().get_si(), b = l.b().get_si(), c = l.c().get_si();
  const long A[3][6] = {{a, b, c, 0, 0, 0}, {0, a, 0, b, c, 0}, {0, 0, a, 0, b, c}};
  long g[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      g[i][j] = 0;
      for (int k = 0; k < 6; ++k) g[i][j] += A[i][k] * A[j][k];
    }
  long adj[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0];
    }
  const long p = g[0][0] * adj[0][0] + g[0][1] * adj[1][0] + g[0][2] * adj[2][0];
  const long m = std::max({std::labs(a), std::labs(b), std::labs(c)});
  const long m4 = 49 * m * m * m * m;

  DistanceScan out;
  out.product_covol2 = p;
  out.min_numerator = std::numeric_limits<std::int64_t>::max();
  std::array<long, 6> x;
  x.fill(-r);
  while (true) {
    long ax[3];
    long len = 0;
    for (int k = 0; k < 6; ++k) len += x[k] * x[k];
    for (int i = 0; i < 3; ++i) {
      ax[i] = 0;
      for (int k = 0; k < 6; ++k) ax[i] += A[i][k] * x[k];
    }
    long cross = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cross += ax[i] * adj[i][j] * ax[j];
    const long num = p * len - cross;
    if (num != 0) {
      ++out.off_span;
      out.min_numerator = std::min<std::int64_t>(out.min_numerator, num);
      if (m4 * num < p) ++out.violations;
    }
    int k = 0;
    while (k < 6 && x[k] == r) x[k++] = -r;
    if (k == 6) break;
    ++x[k];
  }
  return out;
}

void check_ranges(const std::vector<lattice::LinearForm>& forms, int r) {
  if (r < 0 || r > 4) throw MathError(ErrorKind::InvalidArgument, "box radius must be in 0..4");
  for (const auto& l : forms)
    if (l.height_max() > 8) throw MathError(ErrorKind::InvalidArgument, "linear form too large for the int64 kernel");
}

}  // namespace

std::vector<DistanceScan> distance_scan(const std::vector<lattice::LinearForm>& forms, int r) {
  check_ranges(forms, r);
  std::vector<DistanceScan> out(forms.size());
  parallel::for_each_index(forms.size(), [&](std::size_t i) { out[i] = scan_one(forms[i], r); });
  return out;
}

std::vector<DistanceScan> distance_scan_serial(const std::vector<lattice::LinearForm>& forms, int r) {
  check_ranges(forms, r);
  std::vector<DistanceScan> out(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) out[i] = scan_one(forms[i], r);
  return out;
}

}  // namespace kernels
}  // namespace hilb2
