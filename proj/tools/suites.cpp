#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

#include "hilb2/asymptotics.hpp"
#include "hilb2/heights.hpp"
#include "hilb2/kernels.hpp"
#include "hilb2/oracle.hpp"
#include "hilb2/parallel.hpp"

namespace hilb2::suites {

using lattice::LinearForm;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(const Rat& v) { return v.get_str(); }

// Per-index pass/fail tallies, reduced serially.
struct Tally {
  std::vector<std::uint64_t> checks, failures;
  explicit Tally(std::size_t n) : checks(n, 0), failures(n, 0) {}
  void check(std::size_t i, bool ok) {
    ++checks[i];
    if (!ok) ++failures[i];
  }
  void into(SuiteResult& r) const {
    for (auto c : checks) r.checks += c;
    for (auto f : failures) r.failures += f;
  }
};

const Rat kPiLow("3141592653589793/1000000000000000");
const Rat kPiHigh("3141592653589794/1000000000000000");

}  // namespace

std::vector<std::string> suite_names() {
  return {"sl-formula", "minkowski", "minima", "gon", "disc-agreement", "za-family", "oracle-count", "disc-bound"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "sl-formula") return sl_formula(opt);
  if (name == "minkowski") return minkowski(opt);
  if (name == "minima") return minima(opt);
  if (name == "gon") return gon(opt);
  if (name == "za-family") return za_family(opt);
  if (name == "disc-agreement") return disc_agreement(opt);
  if (name == "disc-bound") return disc_bound(opt);
  if (name == "oracle-count") return oracle_count(opt);
  throw std::invalid_argument("unknown suite: " + name);
}

SuiteResult sl_formula(const SuiteOptions& opt) {
  SuiteResult r{"sl-formula", 0, 0, {}};
  const auto forms = hilb::canonical_forms(opt.sl_max);
  Tally tally(forms.size());
  parallel::for_each_index(forms.size(), [&](std::size_t i) {
    const auto& l = forms[i];
    const Int p = lattice::product_covol2_formula(l);
    tally.check(i, p == exactlin::gram_det2(lattice::product_basis(l)));
    const Int n = l.norm2();
    const Int n3 = n * n * n;
    tally.check(i, 3 * p >= 2 * n3 && p <= n3);
  });
  tally.into(r);
  r.metrics.push_back({"forms", num(static_cast<std::uint64_t>(forms.size()))});
  r.metrics.push_back({"max_M", std::to_string(opt.sl_max)});
  return r;
}

SuiteResult minkowski(const SuiteOptions& opt) {
  SuiteResult r{"minkowski", 0, 0, {}};
  const auto forms = hilb::canonical_forms(opt.minima_max);
  Tally tally(forms.size());
  std::vector<Rat> low(forms.size()), high3(forms.size());
  parallel::for_each_index(forms.size(), [&](std::size_t i) {
    const auto& l = forms[i];
    lattice::QuotientLattice q(l);
    auto m = lattice::successive_minima(q);
    const Int M = l.height_max();
    const Rat p(q.product_covol2());
    const Rat prod = m.l1sq * m.l2sq * m.l3sq;
    // lambda3 <= 1 and lambda1 >= 1 / (7 M^2)
    tally.check(i, m.l3sq <= 1);
    tally.check(i, Rat(49 * M * M * M * M) * m.l1sq >= 1);
    // (2^3/3!) covol <= (4 pi / 3) l1 l2 l3 <= 2^3 covol, squared, pi bracketed
    tally.check(i, Rat(1) / p <= kPiLow * kPiLow * prod);
    tally.check(i, kPiHigh * kPiHigh * prod <= Rat(36) / p);
    low[i] = Rat(49 * M * M * M * M) * m.l1sq;
    high3[i] = m.l3sq;
  });
  tally.into(r);
  // sharpness family (M, M - 1, 0)
  std::uint64_t fam = 0;
  for (long M = 2; M <= opt.minima_max; ++M) {
    lattice::QuotientLattice q(LinearForm::from_canonical({M, M - 1, 0}));
    auto m = lattice::successive_minima(q);
    const Rat bound(1, (M * M - M) * (M * M - M));
    ++r.checks;
    ++fam;
    if (m.l1sq > bound) ++r.failures;
  }
  r.metrics.push_back({"forms", num(static_cast<std::uint64_t>(forms.size()))});
  r.metrics.push_back({"sharpness_forms", num(fam)});
  if (!forms.empty()) {
    r.metrics.push_back({"min_49M4_l1sq", num(*std::min_element(low.begin(), low.end()))});
    r.metrics.push_back({"max_l3sq", num(*std::max_element(high3.begin(), high3.end()))});
  }
  return r;
}

SuiteResult minima(const SuiteOptions& opt) {
  SuiteResult r{"minima", 0, 0, {}};
  const auto forms = hilb::canonical_forms(opt.box_forms_max);
  auto scans = kernels::distance_scan(forms, opt.box_radius);
  Rat worst(-1);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    r.checks += scans[i].off_span;
    r.failures += scans[i].violations;
    const Int M = forms[i].height_max();
    Rat v(Int(49) * M * M * M * M * scans[i].min_numerator, Int(scans[i].product_covol2));
    v.canonicalize();
    if (worst < 0 || v < worst) worst = v;
  }
  r.metrics.push_back({"forms", num(static_cast<std::uint64_t>(forms.size()))});
  r.metrics.push_back({"box_radius", std::to_string(opt.box_radius)});
  r.metrics.push_back({"min_49M4_dist2", num(worst)});
  return r;
}

SuiteResult gon(const SuiteOptions& opt) {
  SuiteResult r{"gon", 0, 0, {}};
  std::mt19937_64 rng(opt.seed);
  std::vector<LinearForm> sample;
  while (static_cast<int>(sample.size()) < opt.gon_lattices) {
    const long M = static_cast<long>(rng() % static_cast<std::uint64_t>(opt.gon_max)) + 1;
    Int3 v;
    for (auto& x : v) x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * M + 1)) - M;
    v[rng() % 3] = (rng() & 1) ? M : -M;
    if (exactlin::content(v) != 1) continue;
    sample.push_back(LinearForm::normalize(v));
  }
  const std::vector<double> radii{5, 10, 20};
  struct Row {
    std::uint64_t a = 0, b = 0;
    double ratio = 0;
  };
  std::vector<Row> rows(sample.size() * radii.size());
  parallel::for_each_index(rows.size(), [&](std::size_t k) {
    const auto& l = sample[k / radii.size()];
    const double R = radii[k % radii.size()];
    lattice::QuotientLattice q(l);
    auto m = lattice::successive_minima(q);
    Row& row = rows[k];
    row.a = lattice::count_primitive(q, R);
    row.b = lattice::count_primitive_columns(q, R);
    row.ratio = std::abs(static_cast<double>(row.a) - lattice::gon_main_term(q, R)) / lattice::gon_error_shape(q, m, R);
  });
  double c = 0;
  for (const auto& row : rows) {
    ++r.checks;
    if (row.a != row.b) ++r.failures;
    c = std::max(c, row.ratio);
  }
  ++r.checks;
  if (!(c <= opt.gon_constant)) ++r.failures;
  r.metrics.push_back({"lattices", std::to_string(sample.size())});
  r.metrics.push_back({"calibrated_C", num(c)});
  r.metrics.push_back({"allowed_C", num(opt.gon_constant)});
  return r;
}

SuiteResult za_family(const SuiteOptions& opt) {
  SuiteResult r{"za-family", 0, 0, {}};
  double lo = 2, hi = 0;
  for (long a = 1; a <= opt.za_max; ++a) {
    auto z = hilb::canonicalize({a, -1, 2 - 3 * a}, hilb::QuadraticForm::from({1, 0, -6, 0, 0, 9}));
    const Int A(a);
    auto check = [&](bool ok) {
      ++r.checks;
      if (!ok) ++r.failures;
    };
    check(heights::le_height_squared(z) == 196);
    check(z.covol2_I1() == 10 * A * A - 12 * A + 5);
    check(z.covol2_I2() == 2526 * A * A - 3204 * A + 1266);
    check(heights::classify(z) == heights::PointClass::Nonreduced);
    // H_Le^3 / H_{0,3} = 14^3 / (n2 / n1)^(3/2)
    const double ratio = 2744.0 / heights::height_st(z, 0, 3);
    check(ratio >= 0.68 && ratio <= 1.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  r.metrics.push_back({"min_ratio", num(lo)});
  r.metrics.push_back({"max_ratio", num(hi)});
  return r;
}

SuiteResult disc_agreement(const SuiteOptions& opt) {
  SuiteResult r{"disc-agreement", 0, 0, {}};
  const auto pts = hilb::enumerate_points(2, 1, opt.disc_B);
  Tally tally(pts.size());
  std::vector<int> cls(pts.size());
  parallel::for_each_index(pts.size(), [&](std::size_t i) {
    const auto& z = pts[i];
    const Int d = heights::discriminant(z);
    const Int m4 = ((d % 4) + 4) % 4;
    tally.check(i, m4 == 0 || m4 == 1);
    auto c = heights::classify_disc(d);
    cls[i] = static_cast<int>(c);
    if (c == heights::PointClass::Split) tally.check(i, heights::disc_split_gcd(heights::split_solutions(z)) == d);
    if (c == heights::PointClass::Nonsplit) {
      auto p = heights::nonsplit_params(z);
      tally.check(i, heights::disc_nonsplit(p) == d);
      tally.check(i, heights::ideal_norm(p) == heights::ideal_norm_closed_form(p));
    }
    tally.check(i, heights::le_height_squared(z) == heights::le_height_squared_closed_form(z));
  });
  tally.into(r);
  std::uint64_t counts[3] = {0, 0, 0};
  for (int c : cls) ++counts[c];
  r.metrics.push_back({"points", num(static_cast<std::uint64_t>(pts.size()))});
  r.metrics.push_back({"nonreduced", num(counts[0])});
  r.metrics.push_back({"split", num(counts[1])});
  r.metrics.push_back({"nonsplit", num(counts[2])});
  ++r.checks;
  if (pts.size() < 10000) ++r.failures;
  return r;
}

SuiteResult disc_bound(const SuiteOptions& opt) {
  SuiteResult r{"disc-bound", 0, 0, {}};
  const auto pts = hilb::enumerate_points(2, 1, opt.disc_B);
  std::vector<Rat> ratio(pts.size());
  std::vector<Rat> le_ratio(pts.size());
  parallel::for_each_index(pts.size(), [&](std::size_t i) {
    ratio[i] = heights::disc_ratio(pts[i]);
    // |Disc| covol^2 I(1) <= H_Le^2
    Rat lh = heights::le_height_squared(pts[i]);
    le_ratio[i] = Rat(abs(heights::discriminant(pts[i])) * pts[i].covol2_I1()) / lh;
  });
  Rat worst = 0, worst_le = 0, worst_split = 0;
  const Rat allowed(opt.disc_bound);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ++r.checks;
    if (ratio[i] > allowed) ++r.failures;
    worst = std::max(worst, ratio[i]);
    worst_le = std::max(worst_le, le_ratio[i]);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (heights::classify(pts[i]) == heights::PointClass::Split) worst_split = std::max(worst_split, ratio[i]);
  for (long k = 1; k <= opt.disc_family; ++k) {
    auto z = hilb::canonicalize({0, 0, 1}, hilb::QuadraticForm::from({1, 0, 0, -k * k, 0, 0}));
    Rat expect(4 * k * k, k * k * k * k + 1);
    expect.canonicalize();
    ++r.checks;
    if (heights::disc_ratio(z) != expect) ++r.failures;
  }
  r.metrics.push_back({"points", num(static_cast<std::uint64_t>(pts.size()))});
  r.metrics.push_back({"max_ratio", num(worst)});
  r.metrics.push_back({"max_ratio_split", num(worst_split)});
  r.metrics.push_back({"max_disc_n1_over_le2", num(worst_le)});
  r.metrics.push_back({"allowed", num(opt.disc_bound)});
  return r;
}

SuiteResult oracle_count(const SuiteOptions& opt) {
  SuiteResult r{"oracle-count", 0, 0, {}};
  const std::vector<std::pair<double, double>> st{{2, 1}, {3, 1}, {3, 2}};
  for (const auto& [s, t] : st)
    for (double B : opt.oracle_Bs) {
      const std::uint64_t fast = asymptotics::count_Nst({s, t, B});
      const std::uint64_t slow = oracle::naive_count(s, t, B);
      ++r.checks;
      if (fast != slow) ++r.failures;
      r.metrics.push_back({"N(" + num(s) + "," + num(t) + "," + num(B) + ")", num(fast) + "/" + num(slow)});
    }
  return r;
}

}  // namespace hilb2::suites
