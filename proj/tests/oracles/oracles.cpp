#include "oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace oracle {

using hsns::Grid;
using hsns::HalfSpaceField;
using hsns::Sign;
using hsns::TangentialField;

double kernel(int j, double kappa, double z) {
  const double t = std::abs(z);
  const double e = std::exp(-kappa * t);
  switch (j) {
    case 1: return e;
    case 2: return (z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0)) * e;
    case 3: return (1.0 + kappa * t) * e;
    case 4: return kappa * z * e;
    case 5: return (1.0 - kappa * t) * e;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

double integrate(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14, &err);
}

}  // namespace

cplx L_quadrature(int j, Sign sign, double kappa, const Grid& grid, std::span<const cplx> slabs, const cplx* tail,
                  double x) {
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  auto weight = [&](double y) { return kernel(j, kappa, x - y) + s * kernel(j, kappa, x + y); };
  auto piece = [&](double a, double b) {
    if (x > a && x < b) return integrate(weight, a, x) + integrate(weight, x, b);
    return integrate(weight, a, b);
  };
  cplx total = 0.0;
  const double h = grid.slab_width();
  for (int m = 0; m < grid.slab_count(); ++m) total += slabs[m] * piece(m * h, (m + 1) * h);
  if (tail) {
    const double X = grid.height();
    double far = x > X ? integrate(weight, X, x) + integrate(weight, x, std::numeric_limits<double>::infinity())
                       : integrate(weight, X, std::numeric_limits<double>::infinity());
    total += *tail * far;
  }
  return total;
}

namespace {

/// (1/2π)∫_ℝ A(ξ) e^{iωξ} dξ for a complex integrand A decaying like 1/ξ².
class FourierInverter {
 public:
  FourierInverter() : cos_rule_(1e-9, 6), sin_rule_(1e-9, 6) {}

  template <class A>
  cplx operator()(A&& a, double omega) {
    const double w = std::abs(omega);
    const double flip = omega < 0 ? -1.0 : 1.0;
    // with ξ → -ξ for negative ω the even part is unchanged and the odd part changes sign
    auto even_re = [&](double t) { return 0.5 * (a(t) + a(-t)).real(); };
    auto even_im = [&](double t) { return 0.5 * (a(t) + a(-t)).imag(); };
    auto odd_re = [&](double t) { return 0.5 * (a(t) - a(-t)).real(); };
    auto odd_im = [&](double t) { return 0.5 * (a(t) - a(-t)).imag(); };
    const double cr = cos_rule_.integrate(even_re, w).first;
    const double ci = cos_rule_.integrate(even_im, w).first;
    const double sr = sin_rule_.integrate(odd_re, w).first;
    const double si = sin_rule_.integrate(odd_im, w).first;
    // ∫_ℝ A e^{iωξ} = 2∫_0^∞ (A_even cos(ωξ) + i A_odd sin(ωξ))
    const cplx even(cr, ci), odd(sr, si);
    return (2.0 * even + 2.0 * cplx(0.0, 1.0) * flip * odd) / (2.0 * std::numbers::pi);
  }

 private:
  boost::math::quadrature::ooura_fourier_cos<double> cos_rule_;
  boost::math::quadrature::ooura_fourier_sin<double> sin_rule_;
};

}  // namespace

std::vector<std::vector<cplx>> whole_space_reflection(const HalfSpaceField& F, std::size_t mode,
                                                      std::span<const double> heights) {
  const Grid& grid = F.grid();
  const int d = grid.dim();
  const int n = d + 1;
  const int M = grid.slab_count();
  const double h = grid.slab_width();
  const auto xi_t = grid.xi(mode);
  const double kappa2 = grid.kappa(mode) * grid.kappa(mode);
  const cplx I(0.0, 1.0);

  // Edge weights: a slab value c on [y0, y1] is c (e(y1) - e(y0)), so edge e
  // carries c_{e-1} - c_e.
  std::vector<std::vector<cplx>> edge(n * n, std::vector<cplx>(M + 1));
  for (int c = 0; c < n * n; ++c) {
    for (int e = 0; e <= M; ++e) {
      const cplx below = e > 0 ? F.slab(e - 1)(c, mode) : cplx(0.0);
      const cplx above = e < M ? F.slab(e)(c, mode) : cplx(0.0);
      edge[c][e] = below - above;
    }
  }

  auto symbol = [&](int k, int l, int m, double xn) {
    const double norm2 = kappa2 + xn * xn;
    auto comp = [&](int a) { return a < d ? xi_t[a] : xn; };
    const double proj = (k == l ? 1.0 : 0.0) - comp(k) * comp(l) / norm2;
    return proj * I * comp(m) / norm2;
  };

  // Reflected slab transforms per edge, with e^{iξx} folded into frequencies:
  //   even: 2 sin(ξy)/ξ · e^{iξx} = -i (e^{iξ(x+y)} - e^{iξ(x-y)}) / ξ
  //   odd: -2i (1 - cos ξy)/ξ · e^{iξx} = -i (2 e^{iξx} - e^{iξ(x+y)} - e^{iξ(x-y)}) / ξ
  // For each frequency the integrand is Σ weight · T_klm(ξ) / ξ.
  FourierInverter invert;
  std::vector<std::vector<cplx>> out(heights.size(), std::vector<cplx>(n));
  for (std::size_t hi = 0; hi < heights.size(); ++hi) {
    const double x = heights[hi];
    for (int k = 0; k < n; ++k) {
      // frequency -> coefficient per (l, m)
      std::map<long, std::vector<cplx>> terms;
      auto add = [&](double omega, int lm, cplx coef) {
        const long key = std::lround(omega / (0.5 * h) * 1024.0);
        auto& v = terms[key];
        if (v.empty()) v.assign(n * n, cplx(0.0));
        v[lm] += coef;
      };
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          const int lm = l * n + m;
          for (int e = 0; e <= M; ++e) {
            const cplx w = edge[lm][e];
            if (w == cplx(0.0)) continue;
            const double y = e * h;
            if (m < d) {
              add(x + y, lm, -I * w);
              add(x - y, lm, I * w);
            } else {
              add(x, lm, -2.0 * I * w);
              add(x + y, lm, I * w);
              add(x - y, lm, I * w);
            }
          }
        }
      }
      cplx total = 0.0;
      for (const auto& [key, coef] : terms) {
        const double omega = key / 1024.0 * 0.5 * h;
        auto integrand = [&](double t) {
          const double xn = std::abs(t) < 1e-8 ? (t < 0 ? -1e-8 : 1e-8) : t;
          cplx acc = 0.0;
          for (int l = 0; l < n; ++l) {
            for (int m = 0; m < n; ++m) {
              const cplx c = coef[l * n + m];
              if (c != cplx(0.0)) acc += c * symbol(k, l, m, xn);
            }
          }
          return acc / xn;
        };
        if (omega == 0.0) continue;
        total += invert(integrand, omega);
      }
      out[hi][k] = total;
    }
  }
  return out;
}

TangentialField dense_product(const TangentialField& f, const TangentialField& g) {
  const Grid& grid = f.grid();
  const int N = grid.points();
  const int d = grid.dim();
  TangentialField out(grid, 1);
  for (std::size_t p = 0; p < grid.modes(); ++p) {
    if (f(0, p) == cplx(0.0)) continue;
    const auto kp = grid.multi_index(p);
    for (std::size_t q = 0; q < grid.modes(); ++q) {
      if (g(0, q) == cplx(0.0)) continue;
      const auto kq = grid.multi_index(q);
      std::vector<int> k(d);
      bool inside = true;
      for (int a = 0; a < d; ++a) {
        k[a] = kp[a] + kq[a];
        inside = inside && k[a] >= -N / 2 && k[a] < N / 2;
      }
      if (!inside) continue;
      out(0, grid.mode_index(k)) += f(0, p) * g(0, q);
    }
  }
  for (std::size_t m = 0; m < grid.modes(); ++m) {
    if (!grid.active(m)) out(0, m) = 0.0;
  }
  return out;
}

std::vector<double> direct_physical(const TangentialField& f) {
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const int N = grid.points();
  const double dx = grid.period() / N;
  std::vector<double> out(f.components() * grid.modes());
  for (std::size_t pt = 0; pt < grid.modes(); ++pt) {
    std::vector<double> x(d);
    std::size_t rem = pt;
    for (int a = d - 1; a >= 0; --a) {
      x[a] = static_cast<double>(rem % N) * dx;
      rem /= N;
    }
    for (int c = 0; c < f.components(); ++c) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < grid.modes(); ++m) {
        const cplx v = f(c, m);
        if (v == cplx(0.0)) continue;
        const auto xi = grid.xi(m);
        double phase = 0.0;
        for (int a = 0; a < d; ++a) phase += xi[a] * x[a];
        acc += v * std::polar(1.0, phase);
      }
      out[c * grid.modes() + pt] = acc.real();
    }
  }
  return out;
}

double direct_lp(const TangentialField& f, double p) {
  const Grid& grid = f.grid();
  const auto values = direct_physical(f);
  const double cell = std::pow(grid.period() / grid.points(), grid.dim());
  double acc = 0.0;
  for (std::size_t pt = 0; pt < grid.modes(); ++pt) {
    double norm2 = 0.0;
    for (int c = 0; c < f.components(); ++c) norm2 += values[c * grid.modes() + pt] * values[c * grid.modes() + pt];
    const double v = std::sqrt(norm2);
    if (std::isinf(p)) {
      acc = std::max(acc, v);
    } else {
      acc += std::pow(v, p) * cell;
    }
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

}  // namespace oracle
