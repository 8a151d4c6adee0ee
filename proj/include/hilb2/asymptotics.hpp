#pragma once

// Counting function N_{s,t}(B), the leading constant c_{s,t} with a certified
// tail, convergence tables, and the count for the Le Rudulier height.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hilb2/heights.hpp"

namespace hilb2::asymptotics {

struct CountQuery {
  double s = 2, t = 1, B = 1;
};

struct ConstantEstimate {
  double ratio = 0;
  long M_max = 0;
  double partial = 0;     ///< lower bracket
  double tail_bound = 0;  ///< partial + tail_bound is an upper bracket
  double low() const { return partial; }
  double high() const { return partial + tail_bound; }
};

ConstantEstimate constant_c(double ratio, long M_max);

/// Exact N_{s,t}(B) by summing fiber counts over the linear forms.
std::uint64_t count_Nst(const CountQuery& q);
std::uint64_t count_Nst_serial(const CountQuery& q);

struct ReportRow {
  double B = 0;
  std::uint64_t N = 0;
  double c_low = 0, c_high = 0;
  double prediction = 0;
  double rel_dev = 0;
  double envelope = 0;
};

struct Report {
  double s = 0, t = 0;
  long constant_M = 0;
  bool upper_bound_regime = false;
  std::vector<ReportRow> rows;
};

Report convergence_report(double s, double t, const std::vector<double>& Bs, long constant_M = 200);

/// (3/t, 0)
std::pair<double, long> bm_exponents(double s, double t);

struct LeCount {
  std::uint64_t total = 0;
  std::uint64_t split = 0;
  std::uint64_t nonsplit = 0;
  Int bound_sq;  ///< largest integer x with x^3 <= B^2: H_Le^2 <= x
};

/// Points off the nonreduced locus with H_Le^3 <= B.
LeCount le_count(double B);

/// Split part of le_count counted as unordered pairs of projective points.
std::uint64_t le_split_pairs(const Int& bound_sq);

double le_prediction(double B);

}  // namespace hilb2::asymptotics
