#include "hilb2/oracle.hpp"

#include <cmath>
#include <numeric>

#include "hilb2/errors.hpp"

namespace hilb2::oracle {

using exactlin::IntMatrix;

namespace {

std::string key_of(const Int3& ell, const IntMatrix& gens) {
  IntMatrix h = exactlin::hnf_basis(gens);
  std::string k = exactlin::to_string(ell);
  for (std::size_t i = 0; i < h.rows(); ++i) k += exactlin::to_string(h.row(i));
  return k;
}

IntMatrix product_rows(const Int3& l) {
  IntMatrix m(3, 6);
  m(0, 0) = l[0], m(0, 1) = l[1], m(0, 2) = l[2];
  m(1, 1) = l[0], m(1, 3) = l[1], m(1, 4) = l[2];
  m(2, 2) = l[0], m(2, 4) = l[1], m(2, 5) = l[2];
  return m;
}

// coefficients of (x . X)(y . X) on X0^2, X0X1, X0X2, X1^2, X1X2, X2^2
std::array<Int, 6> product_of_linear(const Int3& x, const Int3& y) {
  return {x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[0] * y[2] + x[2] * y[0],
          x[1] * y[1], x[1] * y[2] + x[2] * y[1], x[2] * y[2]};
}

Int3 inverse_row(const std::array<Int3, 3>& cols, std::size_t i, const Int& det) {
  // row i of the inverse of the matrix with the given columns
  std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
  Int3 r = exactlin::cross(cols[j], cols[k]);
  for (auto& v : r) v /= det;
  return r;
}

}  // namespace

std::string point_key(const hilb::HilbPoint& z) {
  IntMatrix gens = product_rows(z.ell().coeffs());
  gens.append_row(z.q_lift());
  return key_of(z.ell().coeffs(), gens);
}

std::set<std::string> naive_points(double s, double t, double B, long margin) {
  std::set<std::string> keys;
  const long mm = hilb::m_max(s, t, B);
  if (mm < 1) return keys;
  hilb::HeightBound hb(s, t, B);
  const long scan = mm + margin;
  for (long a = 0; a <= scan; ++a)
    for (long b = -scan; b <= scan; ++b)
      for (long c = -scan; c <= scan; ++c) {
        if (a == 0 && (b < 0 || (b == 0 && c <= 0))) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        const Int3 ell{a, b, c};
        const IntMatrix prod = product_rows(ell);
        const Int p = exactlin::gram_det2(prod);
        IntMatrix ell_row(1, 3);
        for (std::size_t i = 0; i < 3; ++i) ell_row(0, i) = ell[i];
        const Int n1 = exactlin::gram_det2(ell_row);
        // y^2 = largest covol^2 of I(2) allowed over this form, with margin
        const double y2 = std::exp((2.0 * std::log(B) - (s - t) * std::log(n1.get_d())) / t) * (1 + 1e-9) + 1;
        const double y = std::sqrt(y2);

        auto kb = exactlin::kernel_basis(ell);
        // u with l(u) = 1 completes (e, f) to a basis of Z^3
        Int x0, x1, g01, y0, y1;
        g01 = exactlin::xgcd(ell[0], ell[1], x0, x1);
        Int g = exactlin::xgcd(g01, ell[2], y0, y1);
        check_internal(g == 1, "linear form not primitive");
        Int3 u{x0 * y0, x1 * y0, y1};
        std::array<Int3, 3> cols{kb.e, kb.f, u};
        Int det = exactlin::dot(exactlin::cross(kb.e, kb.f), u);
        check_internal(det == 1 || det == -1, "completion is not unimodular");
        const Int3 le = inverse_row(cols, 0, det), lf = inverse_row(cols, 1, det);

        // |q(v)| <= |proj q| |ev(v)| with |proj q|^2 = covol2(I(2)) / P
        auto ev_norm = [](const Int3& v) {
          Int sq = v[0] * v[0] * v[0] * v[0] + v[0] * v[0] * v[1] * v[1] + v[0] * v[0] * v[2] * v[2] +
                   v[1] * v[1] * v[1] * v[1] + v[1] * v[1] * v[2] * v[2] + v[2] * v[2] * v[2] * v[2];
          return std::sqrt(sq.get_d());
        };
        Int3 epf{kb.e[0] + kb.f[0], kb.e[1] + kb.f[1], kb.e[2] + kb.f[2]};
        // B = q(e+f) - q(e) - q(f) = <q, ev(e+f) - ev(e) - ev(f)>
        auto ev = [](const Int3& v) {
          return std::array<Int, 6>{v[0] * v[0], v[0] * v[1], v[0] * v[2], v[1] * v[1], v[1] * v[2], v[2] * v[2]};
        };
        auto ee = ev(kb.e), ff = ev(kb.f), sum = ev(epf);
        Int wsq = 0;
        for (std::size_t i = 0; i < 6; ++i) {
          Int d = sum[i] - ee[i] - ff[i];
          wsq += d * d;
        }
        const double scale = y / std::sqrt(p.get_d());
        const long amax = static_cast<long>(scale * ev_norm(kb.e)) + 1;
        const long cmax = static_cast<long>(scale * ev_norm(kb.f)) + 1;
        const long bmax = static_cast<long>(scale * std::sqrt(wsq.get_d())) + 1;

        const auto le2 = product_of_linear(le, le), lelf = product_of_linear(le, lf), lf2 = product_of_linear(lf, lf);
        for (long A = -amax; A <= amax; ++A)
          for (long Bc = -bmax; Bc <= bmax; ++Bc)
            for (long C = -cmax; C <= cmax; ++C) {
              if (std::gcd(std::gcd(A, Bc), C) != 1) continue;
              IntMatrix gens = prod;
              IntVec q(6);
              for (std::size_t i = 0; i < 6; ++i) q[i] = A * le2[i] + Bc * lelf[i] + C * lf2[i];
              gens.append_row(q);
              if (exactlin::smith_minor_gcd(gens, 4) != 1) continue;
              const Int n2 = exactlin::gram_det2(gens);
              if (!hb.admits(n1, n2)) continue;
              keys.insert(key_of(ell, gens));
            }
      }
  return keys;
}

std::uint64_t naive_count(double s, double t, double B, long margin) {
  return naive_points(s, t, B, margin).size();
}

std::uint64_t naive_count_primitive(const IntMatrix& K, const Rat& threshold, bool strict) {
  const Int det = exactlin::determinant(K);
  std::array<long, 3> box{};
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t p = (i + 1) % 3, q = (i + 2) % 3;
    Int adj = K(p, p) * K(q, q) - K(p, q) * K(q, p);
    Rat b2 = threshold * Rat(adj) / Rat(det);
    box[i] = static_cast<long>(std::sqrt(b2.get_d())) + 1;
  }
  std::uint64_t n = 0;
  for (long y0 = -box[0]; y0 <= box[0]; ++y0)
    for (long y1 = -box[1]; y1 <= box[1]; ++y1)
      for (long y2 = -box[2]; y2 <= box[2]; ++y2) {
        if (std::gcd(std::gcd(y0, y1), y2) != 1) continue;
        Int v = 0;
        const long y[3] = {y0, y1, y2};
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) v += K(i, j) * y[i] * y[j];
        Rat val(v);
        if (strict ? val < threshold : val <= threshold) ++n;
      }
  return n;
}

}  // namespace hilb2::oracle
