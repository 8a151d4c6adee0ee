#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hilb2/asymptotics.hpp"
#include "hilb2/errors.hpp"
#include "hilb2/heights.hpp"
#include "hilb2/parallel.hpp"

namespace hilb2::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string vec(std::span<const Int> v) { return exactlin::to_string(v); }

json to_json(std::span<const Int> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
  return a;
}

json int_json(const Int& x) { return x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()); }

/// Exact integer when the value is one, otherwise 17 significant digits.
std::string height_field(const std::optional<Rat>& exact, double approx) {
  if (exact && exact->get_den() == 1) return exact->get_num().get_str();
  return fmt(approx);
}

std::string le_field(const Rat& sq) {
  if (sq.get_den() == 1 && exactlin::is_perfect_square(sq.get_num())) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), sq.get_num_mpz_t());
    return r.get_str();
  }
  return fmt(std::sqrt(sq.get_d()));
}

std::string csv_quote(const std::string& s) {
  if (s.find(',') == std::string::npos) return s;
  return "\"" + s + "\"";
}

// ---------------------------------------------------------------------------

int do_count(const RunConfig& c, std::ostream& out) {
  if (c.B.empty()) throw MathError(ErrorKind::InvalidArgument, "count needs at least one --B");
  if (c.emit_points) {
    if (c.B.size() != 1) throw MathError(ErrorKind::InvalidArgument, "--emit-points takes exactly one --B");
    const auto pts = hilb::enumerate_points(c.s, c.t, c.B[0]);
    if (c.format == Format::Json) {
      json arr = json::array();
      for (const auto& z : pts) {
        const Int d = heights::discriminant(z);
        arr.push_back({{"ell", to_json(z.ell().coeffs())},
                       {"qbar", to_json(z.qbar())},
                       {"q_lift", to_json(z.q_lift())},
                       {"covol2_I1", int_json(z.covol2_I1())},
                       {"covol2_I2", int_json(z.covol2_I2())},
                       {"height", height_field(heights::height_st_exact(z, c.s, c.t), heights::height_st(z, c.s, c.t))},
                       {"class", heights::to_string(heights::classify_disc(d))},
                       {"disc", int_json(d)}});
      }
      json doc{{"schema_version", kSchemaVersion},
               {"command", "count"},
               {"query", {{"s", c.s}, {"t", c.t}, {"B", c.B[0]}}},
               {"points", arr}};
      out << doc.dump(2) << '\n';
      return kOk;
    }
    out << "ell_a,ell_b,ell_c,qbar_1,qbar_2,qbar_3,q_lift_0,q_lift_1,q_lift_2,q_lift_3,q_lift_4,q_lift_5,"
           "covol2_I1,covol2_I2,height,class,disc\n";
    for (const auto& z : pts) {
      const Int d = heights::discriminant(z);
      for (const auto& x : z.ell().coeffs()) out << x.get_str() << ',';
      for (const auto& x : z.qbar()) out << x.get_str() << ',';
      for (const auto& x : z.q_lift()) out << x.get_str() << ',';
      out << z.covol2_I1().get_str() << ',' << z.covol2_I2().get_str() << ','
          << height_field(heights::height_st_exact(z, c.s, c.t), heights::height_st(z, c.s, c.t)) << ','
          << heights::to_string(heights::classify_disc(d)) << ',' << d.get_str() << '\n';
    }
    return kOk;
  }

  auto rep = asymptotics::convergence_report(c.s, c.t, c.B, c.M_max);
  const std::string regime = rep.upper_bound_regime ? "upper-bound regime" : "asymptotic regime";
  if (c.format == Format::Json) {
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"B", r.B},
                      {"N", r.N},
                      {"c_low", r.c_low},
                      {"c_high", r.c_high},
                      {"prediction", r.prediction},
                      {"rel_dev", r.rel_dev},
                      {"envelope", r.envelope}});
    json doc{{"schema_version", kSchemaVersion},
             {"command", "count"},
             {"query", {{"s", c.s}, {"t", c.t}, {"B", c.B}}},
             {"regime", regime},
             {"constant_M_max", rep.constant_M}};
    if (rep.rows.size() == 1) {
      const auto& r = rep.rows.front();
      doc["N"] = r.N;
      doc["c_bracket"] = {r.c_low, r.c_high};
      doc["prediction"] = r.prediction;
      doc["rel_dev"] = r.rel_dev;
    }
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "# s=" << fmt(c.s) << " t=" << fmt(c.t) << " " << regime << '\n';
  out << "B,N,c_low,c_high,prediction,rel_dev,envelope\n";
  for (const auto& r : rep.rows)
    out << fmt(r.B) << ',' << r.N << ',' << fmt(r.c_low) << ',' << fmt(r.c_high) << ',' << fmt(r.prediction) << ','
        << fmt(r.rel_dev) << ',' << fmt(r.envelope) << '\n';
  return kOk;
}

int do_constant(const RunConfig& c, std::ostream& out) {
  auto est = asymptotics::constant_c(c.ratio, c.M_max);
  if (c.format == Format::Json) {
    json doc{{"schema_version", kSchemaVersion}, {"command", "constant"}, {"ratio", est.ratio},
             {"M_max", est.M_max},               {"partial", est.partial},   {"tail_bound", est.tail_bound},
             {"c_low", est.low()},                {"c_high", est.high()}};
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "ratio,M_max,partial,tail_bound,c_low,c_high\n";
  out << fmt(est.ratio) << ',' << est.M_max << ',' << fmt(est.partial) << ',' << fmt(est.tail_bound) << ','
      << fmt(est.low()) << ',' << fmt(est.high()) << '\n';
  return kOk;
}

int do_inspect(const RunConfig& c, std::ostream& out) {
  if (c.ell.size() != 3) throw MathError(ErrorKind::InvalidArgument, "--ell needs 3 integers");
  if (c.q.size() != 6) throw MathError(ErrorKind::InvalidArgument, "--q needs 6 integers");
  hilb::QuadraticForm q;
  for (std::size_t i = 0; i < 6; ++i) q.c[i] = c.q[i];
  auto z = hilb::canonicalize({c.ell[0], c.ell[1], c.ell[2]}, q);
  const Int d = heights::discriminant(z);
  const auto cls = heights::classify_disc(d);
  const auto le2 = heights::le_height_squared(z);
  const auto f = heights::restrict_to_line(z);

  std::vector<std::pair<std::string, std::string>> fields{
      {"ell", vec(z.ell().coeffs())},
      {"qbar", vec(z.qbar())},
      {"q_lift", vec(z.q_lift())},
      {"covol2_I1", z.covol2_I1().get_str()},
      {"covol2_I2", z.covol2_I2().get_str()},
      {"H1", fmt(std::sqrt(z.covol2_I1().get_d()))},
      {"H2", fmt(std::sqrt(z.covol2_I2().get_d()))},
      {"H_st", height_field(heights::height_st_exact(z, c.s, c.t), heights::height_st(z, c.s, c.t))},
      {"binary_form", "(" + f.A.get_str() + "," + f.B.get_str() + "," + f.C.get_str() + ")"},
      {"class", heights::to_string(cls)},
      {"disc", d.get_str()},
      {"H_Le", le_field(le2)},
      {"H_Le_squared", le2.get_str()},
      {"disc_ratio", heights::disc_ratio(z).get_str()},
  };
  if (cls == heights::PointClass::Split) {
    auto sol = heights::split_solutions(z);
    fields.push_back({"v", vec(sol.v)});
    fields.push_back({"w", vec(sol.w)});
  } else if (cls == heights::PointClass::Nonsplit) {
    auto p = heights::nonsplit_params(z);
    fields.push_back({"g", p.g.get_str()});
    fields.push_back({"alpha", p.alpha.get_str()});
    fields.push_back({"beta", p.beta.get_str()});
    fields.push_back({"e", vec(p.e)});
    fields.push_back({"f", vec(p.f)});
    fields.push_back({"ideal_norm", heights::ideal_norm(p).get_str()});
    fields.push_back({"maximal_order_norm", heights::maximal_order_norm(p).get_str()});
  }
  if (c.format == Format::Json) {
    json doc{{"schema_version", kSchemaVersion}, {"command", "inspect"}};
    for (const auto& [k, v] : fields) doc[k] = v;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "field,value\n";
  for (const auto& [k, v] : fields) out << k << ',' << csv_quote(v) << '\n';
  return kOk;
}

int do_verify(const RunConfig& c, std::ostream& out) {
  suites::SuiteOptions opt = c.suite_options;
  opt.seed = c.seed;
  auto res = suites::run_suite(c.suite, opt);
  const std::string status = res.passed() ? "pass" : "fail";
  if (c.format == Format::Json) {
    json metrics = json::object();
    for (const auto& [k, v] : res.metrics) metrics[k] = v;
    json doc{{"schema_version", kSchemaVersion},
             {"command", "verify"},
             {"suite", res.name},
             {"seed", c.seed},
             {"checks", res.checks},
             {"failures", res.failures},
             {"status", status},
             {"metrics", metrics}};
    out << doc.dump(2) << '\n';
  } else {
    out << "suite,metric,value\n";
    out << res.name << ",seed," << c.seed << '\n';
    out << res.name << ",checks," << res.checks << '\n';
    out << res.name << ",failures," << res.failures << '\n';
    for (const auto& [k, v] : res.metrics) out << res.name << ',' << csv_quote(k) << ',' << csv_quote(v) << '\n';
    out << res.name << ",status," << status << '\n';
  }
  return res.passed() ? kOk : kInternal;
}

int do_le_count(const RunConfig& c, std::ostream& out) {
  if (c.B.empty()) throw MathError(ErrorKind::InvalidArgument, "le-count needs at least one --B");
  json rows = json::array();
  std::ostringstream csv;
  csv << "B,count,split,nonsplit,split_pairs,prediction,ratio\n";
  for (double B : c.B) {
    auto r = asymptotics::le_count(B);
    const std::uint64_t pairs = asymptotics::le_split_pairs(r.bound_sq);
    const double pred = B > 1 ? asymptotics::le_prediction(B) : 0.0;
    const double ratio = pred > 0 ? static_cast<double>(r.total) / pred : 0.0;
    rows.push_back({{"B", B},
                    {"count", r.total},
                    {"split", r.split},
                    {"nonsplit", r.nonsplit},
                    {"split_pairs", pairs},
                    {"prediction", pred},
                    {"ratio", ratio}});
    csv << fmt(B) << ',' << r.total << ',' << r.split << ',' << r.nonsplit << ',' << pairs << ',' << fmt(pred) << ','
        << fmt(ratio) << '\n';
  }
  if (c.format == Format::Json) {
    json doc{{"schema_version", kSchemaVersion}, {"command", "le-count"}, {"rows", rows}};
    out << doc.dump(2) << '\n';
  } else {
    out << csv.str();
  }
  return kOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.out.empty()) {
    file.open(config.out);
    if (!file) {
      err << "error: cannot open " << config.out << '\n';
      return kUsage;
    }
    sink = &file;
  }
  parallel::set_threads(config.threads);
  try {
    switch (config.command) {
      case Command::Count: return do_count(config, *sink);
      case Command::Constant: return do_constant(config, *sink);
      case Command::Inspect: return do_inspect(config, *sink);
      case Command::Verify: return do_verify(config, *sink);
      case Command::LeCount: return do_le_count(config, *sink);
    }
  } catch (const MathError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Integral points of Hilb^2(P^2) of bounded height"};
  app.require_subcommand(1);
  std::string format = "csv";
  int threads = -1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "Worker threads (default: HILB2_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", cfg.out, "Write the report to this file");
    sub->add_option("--seed", cfg.seed, "Seed for randomized suites");
  };

  auto* count = app.add_subcommand("count", "Count points with H_{s,t} <= B");
  count->add_option("--s", cfg.s, "Exponent s")->required();
  count->add_option("--t", cfg.t, "Exponent t")->required();
  count->add_option("--B", cfg.B, "Height bound (repeatable)")->required();
  count->add_option("--M-max", cfg.M_max, "Truncation of the constant series");
  count->add_flag("--emit-points", cfg.emit_points, "Print the points instead of the report");
  common(count);

  auto* constant = app.add_subcommand("constant", "Evaluate the leading constant");
  constant->add_option("--ratio", cfg.ratio, "s / t")->required();
  constant->add_option("--M-max", cfg.M_max, "Truncation");
  common(constant);

  auto* inspect = app.add_subcommand("inspect", "Describe one point");
  inspect->add_option("--ell", cfg.ell, "Linear form a,b,c")->required()->delimiter(',')->allow_extra_args(false);
  inspect->add_option("--q", cfg.q, "Quadratic form on X0^2,X0X1,X0X2,X1^2,X1X2,X2^2")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);
  inspect->add_option("--s", cfg.s, "Exponent s for H_st");
  inspect->add_option("--t", cfg.t, "Exponent t for H_st");
  common(inspect);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", cfg.suite, "Suite name")->required()->check(CLI::IsMember(suites::suite_names()));
  common(verify);

  auto* le = app.add_subcommand("le-count", "Count points by the Le Rudulier height");
  le->add_option("--B", cfg.B, "Height bound (repeatable)")->required();
  common(le);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (count->parsed()) cfg.command = Command::Count;
  if (constant->parsed()) cfg.command = Command::Constant;
  if (inspect->parsed()) cfg.command = Command::Inspect;
  if (verify->parsed()) cfg.command = Command::Verify;
  if (le->parsed()) cfg.command = Command::LeCount;
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (threads < 0) {
    const char* env = std::getenv("HILB2_THREADS");
    threads = 0;
    if (env && *env) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        err << "error: HILB2_THREADS must be an integer\n";
        return kUsage;
      }
      if (threads < 0) {
        err << "error: HILB2_THREADS must be nonnegative\n";
        return kUsage;
      }
    }
  }
  cfg.threads = threads;
  return run(cfg, out, err);
}

}  // namespace hilb2::cli
