// Acceptance run: one line per criterion, exit status 0 when every gating
// criterion passes.

#include <chrono>
#include <cli.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "hilb2/asymptotics.hpp"
#include "hilb2/parallel.hpp"

using namespace hilb2;
using json = nlohmann::json;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int gating_failures = 0;

void report(int id, const std::string& title, bool gating, const std::function<Verdict()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (gating && !v.pass) ++gating_failures;
  char head[160];
  std::snprintf(head, sizeof head, "criterion %2d [%s]%s %s", id, v.pass ? "PASS" : "FAIL",
                gating ? "" : " (informational)", title.c_str());
  std::printf("%s: %s (%.1f s)\n", head, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string run_cli(cli::RunConfig cfg, int* code = nullptr) {
  std::ostringstream out, err;
  int rc = cli::run(cfg, out, err);
  if (code) *code = rc;
  return out.str() + err.str();
}

cli::RunConfig verify_config(const std::string& suite, int threads) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::Verify;
  cfg.suite = suite;
  cfg.format = cli::Format::Json;
  cfg.threads = threads;
  return cfg;
}

Verdict suite_verdict(const std::string& suite, const std::vector<std::string>& keys) {
  int rc = 0;
  auto doc = json::parse(run_cli(verify_config(suite, 0), &rc));
  std::ostringstream d;
  d << doc["checks"].get<std::uint64_t>() << " checks, " << doc["failures"].get<std::uint64_t>() << " failures";
  for (const auto& k : keys)
    if (doc["metrics"].contains(k)) d << ", " << k << "=" << doc["metrics"][k].get<std::string>();
  return {rc == 0 && doc["status"] == "pass", d.str()};
}

std::string fmt(double v, const char* f = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", parallel::threads());

  report(1, "oracle equivalence", true, [] { return suite_verdict("oracle-count", {}); });
  report(2, "product covolume identities", true, [] { return suite_verdict("sl-formula", {"forms", "max_M"}); });
  report(3, "successive minima bounds", true,
         [] { return suite_verdict("minkowski", {"forms", "min_49M4_l1sq", "max_l3sq", "sharpness_forms"}); });
  report(4, "distance to the product span", true,
         [] { return suite_verdict("minima", {"forms", "box_radius", "min_49M4_dist2"}); });
  report(5, "primitive counts and error envelope", true,
         [] { return suite_verdict("gon", {"lattices", "calibrated_C", "allowed_C"}); });
  report(6, "worked family Z_a", true, [] { return suite_verdict("za-family", {"min_ratio", "max_ratio"}); });
  report(7, "discriminant agreement", true,
         [] { return suite_verdict("disc-agreement", {"points", "split", "nonsplit"}); });
  report(8, "discriminant bound", true,
         [] { return suite_verdict("disc-bound", {"points", "max_ratio", "max_ratio_split"}); });

  report(9, "main term convergence for (s,t)=(2,1)", true, [] {
    auto rep = asymptotics::convergence_report(2, 1, {10, 20, 30}, 200);
    const auto& r10 = rep.rows[0];
    const auto& r30 = rep.rows[2];
    std::string d = "c in [" + fmt(r10.c_low, "%.10f") + ", " + fmt(r10.c_high, "%.10f") + "]";
    for (const auto& r : rep.rows)
      d += ", B=" + fmt(r.B) + ": N=" + std::to_string(r.N) + " dev=" + fmt(r.rel_dev);
    return Verdict{r30.rel_dev < r10.rel_dev && r30.rel_dev <= 0.35, d};
  });

  report(10, "Batyrev-Manin exponents", true, [] {
    int n = 0, good = 0;
    for (double s : {0.5, 1.0, 2.0, 3.0, 4.0})
      for (double t : {0.5, 1.0, 2.0, 3.0}) {
        auto [alpha, beta] = asymptotics::bm_exponents(s, t);
        ++n;
        if (alpha == 3.0 / t && beta == 0) ++good;
      }
    return Verdict{n == 20 && good == 20, std::to_string(good) + "/" + std::to_string(n) + " pairs"};
  });

  report(11, "Le Rudulier ratio", false, [] {
    const auto t0 = std::chrono::steady_clock::now();
    double last_B = 0, last_ratio = 0;
    std::string d;
    // B = 10^3, 10^3.5, ..., 10^5 while the time budget lasts
    for (int k = 0; k <= 4; ++k) {
      const double B = std::round(std::pow(10.0, 3.0 + 0.5 * k));
      auto c = asymptotics::le_count(B);
      const bool cross = c.split == asymptotics::le_split_pairs(c.bound_sq);
      last_B = B;
      last_ratio = c.total / asymptotics::le_prediction(B);
      d += "B=" + fmt(B) + ": N=" + std::to_string(c.total) + " ratio=" + fmt(last_ratio) +
           (cross ? "" : " SPLIT-MISMATCH") + "; ";
      if (!cross) return Verdict{false, d};
      if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > 60) break;
    }
    d += "largest B=" + fmt(last_B);
    return Verdict{last_ratio >= 0.4 && last_ratio <= 2.5, d};
  });

  report(12, "determinism across thread counts", true, [] {
    int same = 0, total = 0;
    std::string diff;
    for (const auto& name : suites::suite_names()) {
      auto a = verify_config(name, 1), b = verify_config(name, 4);
      // the three slowest suites rerun at reduced size
      for (auto* c : {&a, &b}) {
        c->suite_options.oracle_Bs = {1, 2, 5, 10};
        c->suite_options.minima_max = 12;
        c->suite_options.gon_lattices = 25;
        c->suite_options.gon_max = 20;
      }
      ++total;
      if (run_cli(a) == run_cli(b))
        ++same;
      else
        diff += " " + name;
    }
    for (cli::Command cmd : {cli::Command::Count, cli::Command::Constant, cli::Command::LeCount}) {
      cli::RunConfig a;
      a.command = cmd;
      a.B = {15, 20};
      a.M_max = 100;
      auto b = a;
      a.threads = 1;
      b.threads = 4;
      ++total;
      if (run_cli(a) == run_cli(b))
        ++same;
      else
        diff += " command" + std::to_string(static_cast<int>(cmd));
    }
    return Verdict{same == total, std::to_string(same) + "/" + std::to_string(total) + " reports identical" + diff};
  });

  std::printf("gating failures: %d\n", gating_failures);
  return gating_failures == 0 ? 0 : 1;
}
