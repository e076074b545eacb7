#include "polyflow/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace polyflow {

double oriented_area(const Polygon& z) {
  double s = 0.0;
  for (int k = 0; k < z.n(); ++k) {
    s += ((z.wrapped(k + 1) - z.wrapped(k - 1)) * std::conj(z[k])).imag();
  }
  return 0.25 * s;
}

double area_differential(const Polygon& z, const VertexField& t) {
  check_same_size(z, t, "area_differential");
  double s = 0.0;
  for (int k = 0; k < z.n(); ++k) {
    s += ((z.wrapped(k + 1) - z.wrapped(k - 1)) * std::conj(t[k])).imag();
  }
  return 0.5 * s;
}

Complex circumcenter(Complex u, Complex v, Complex w) {
  const Complex uv = u - v;
  const Complex wv = w - v;
  const Complex wu = w - u;
  const double scale = std::max({std::abs(uv), std::abs(wv), std::abs(wu)});
  constexpr double rel = 1e-12;
  if (std::abs(uv) <= rel * scale || std::abs(wv) <= rel * scale || std::abs(wu) <= rel * scale) {
    throw DuplicatePoints("circumcenter: two of the three points coincide");
  }
  // Twice the signed parallelogram area spanned by (u-v, w-v).
  const Complex det = std::conj(uv) * wv - std::conj(wv) * uv;
  if (std::abs(det) <= rel * scale * scale) {
    throw CollinearPoints("circumcenter: points are collinear");
  }
  const Complex c = (wv / std::conj(wv) - uv / std::conj(uv)) / wu;
  return v + c / std::norm(c);
}

std::vector<std::optional<Complex>> developed_polygon(const Polygon& z) {
  std::vector<std::optional<Complex>> out(static_cast<std::size_t>(z.n()));
  for (int n = 0; n < z.n(); ++n) {
    try {
      out[static_cast<std::size_t>(n)] = circumcenter(z.wrapped(n - 1), z[n], z.wrapped(n + 1));
    } catch (const CollinearPoints&) {
      out[static_cast<std::size_t>(n)] = std::nullopt;
    } catch (const DuplicatePoints&) {
      out[static_cast<std::size_t>(n)] = std::nullopt;
    }
  }
  return out;
}

double developed_perimeter(const Polygon& z) {
  const auto centers = developed_polygon(z);
  for (const auto& o : centers) {
    if (!o) return std::numeric_limits<double>::infinity();
  }
  double s = 0.0;
  const int n = z.n();
  for (int k = 0; k < n; ++k) {
    s += std::abs(*centers[static_cast<std::size_t>((k + 1) % n)] - *centers[static_cast<std::size_t>(k)]);
  }
  return s;
}

namespace {

struct SecondMoments {
  Complex centroid;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
};

SecondMoments moments(const Polygon& z) {
  SecondMoments m;
  m.centroid = field_mean(z);
  for (int i = 0; i < z.n(); ++i) {
    const Complex d = z[i] - m.centroid;
    m.sxx += d.real() * d.real();
    m.sxy += d.real() * d.imag();
    m.syy += d.imag() * d.imag();
  }
  return m;
}

// Unit direction of the dominant principal axis; falls back to the wider
// coordinate axis when the moments are isotropic (which only happens far from
// collinearity, so the caller's distance test is unaffected).
Complex principal_direction(const SecondMoments& m) {
  const double tr = m.sxx + m.syy;
  const double det = m.sxx * m.syy - m.sxy * m.sxy;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double lmax = tr / 2.0 + disc;
  Complex v1(lmax - m.syy, m.sxy);
  Complex v2(m.sxy, lmax - m.sxx);
  Complex v = std::abs(v1) >= std::abs(v2) ? v1 : v2;
  if (std::abs(v) == 0.0) v = m.sxx >= m.syy ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  return v / std::abs(v);
}

}  // namespace

bool is_collinear(const Polygon& z, double tol) {
  const double diam = polygon_diameter(z);
  if (diam == 0.0) return true;
  const SecondMoments m = moments(z);
  const Complex dir = principal_direction(m);
  double max_dist = 0.0;
  for (int i = 0; i < z.n(); ++i) {
    // Distance to the line through the centroid along dir.
    const Complex d = z[i] - m.centroid;
    max_dist = std::max(max_dist, std::abs((d * std::conj(dir)).imag()));
  }
  return max_dist <= tol * diam;
}

CircleFit fit_circle(const Polygon& z) {
  if (is_collinear(z)) {
    throw CollinearPoints("fit_circle: vertices are collinear");
  }
  const int n = z.n();
  const Complex mean = field_mean(z);

  // Algebraic (Kasa) fit on centered data: minimise sum (|p|^2 + Bx + Cy + D)^2.
  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0;
  double sxr = 0, syr = 0, sr = 0;
  for (int i = 0; i < n; ++i) {
    const Complex p = z[i] - mean;
    const double x = p.real(), y = p.imag(), r2 = std::norm(p);
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    sx += x;
    sy += y;
    sxr += x * r2;
    syr += y * r2;
    sr += r2;
  }
  const std::array<std::array<double, 3>, 3> a = {{{sxx, sxy, sx}, {sxy, syy, sy}, {sx, sy, static_cast<double>(n)}}};
  const std::array<double, 3> b = {-sxr, -syr, -sr};
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  if (std::abs(det) <= 0.0) {
    throw CollinearPoints("fit_circle: degenerate normal equations");
  }
  auto solve3 = [&](const std::array<std::array<double, 3>, 3>& mat, const std::array<double, 3>& rhs) {
    std::array<double, 3> out{};
    for (int c = 0; c < 3; ++c) {
      std::array<std::array<double, 3>, 3> mc = mat;
      for (int r = 0; r < 3; ++r) mc[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = rhs[static_cast<std::size_t>(r)];
      const double dc = mc[0][0] * (mc[1][1] * mc[2][2] - mc[1][2] * mc[2][1]) -
                        mc[0][1] * (mc[1][0] * mc[2][2] - mc[1][2] * mc[2][0]) +
                        mc[0][2] * (mc[1][0] * mc[2][1] - mc[1][1] * mc[2][0]);
      out[static_cast<std::size_t>(c)] = dc / det;
    }
    return out;
  };
  const auto bcd = solve3(a, b);
  Complex o(-bcd[0] / 2.0, -bcd[1] / 2.0);
  double r2 = std::norm(o) - bcd[2];
  if (!(r2 > 0.0)) {
    throw CollinearPoints("fit_circle: no finite positive radius");
  }
  double radius = std::sqrt(r2);

  // One Gauss-Newton step on the geometric residuals |z - o| - R.
  double jtj[3][3] = {};
  double jtr[3] = {};
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    const Complex d = (z[i] - mean) - o;
    const double dist = std::abs(d);
    if (dist <= 1e-14 * radius) {
      ok = false;
      break;
    }
    const double jx = -d.real() / dist, jy = -d.imag() / dist, jr = -1.0;
    const double res = dist - radius;
    const double row[3] = {jx, jy, jr};
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) jtj[p][q] += row[p] * row[q];
      jtr[p] += row[p] * res;
    }
  }
  if (ok) {
    const std::array<std::array<double, 3>, 3> m = {{{jtj[0][0], jtj[0][1], jtj[0][2]},
                                                     {jtj[1][0], jtj[1][1], jtj[1][2]},
                                                     {jtj[2][0], jtj[2][1], jtj[2][2]}}};
    const double detm = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (std::abs(detm) > 0.0) {
      std::array<double, 3> delta{};
      for (int c = 0; c < 3; ++c) {
        std::array<std::array<double, 3>, 3> mc = m;
        for (int r = 0; r < 3; ++r) mc[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = -jtr[static_cast<std::size_t>(r)];
        const double dc = mc[0][0] * (mc[1][1] * mc[2][2] - mc[1][2] * mc[2][1]) -
                          mc[0][1] * (mc[1][0] * mc[2][2] - mc[1][2] * mc[2][0]) +
                          mc[0][2] * (mc[1][0] * mc[2][1] - mc[1][1] * mc[2][0]);
        delta[static_cast<std::size_t>(c)] = dc / detm;
      }
      const Complex o_new = o + Complex(delta[0], delta[1]);
      const double r_new = radius + delta[2];
      if (r_new > 0.0) {
        o = o_new;
        radius = r_new;
      }
    }
  }

  CircleFit fit;
  fit.circle.center = o + mean;
  fit.circle.radius = radius;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(std::abs(z[i] - fit.circle.center) - radius));
  }
  fit.relative_residual = worst / radius;
  return fit;
}

double polygon_perimeter(const Polygon& z) {
  double s = 0.0;
  for (int k = 0; k < z.n(); ++k) s += std::abs(z.wrapped(k + 1) - z[k]);
  return s;
}

double polygon_diameter(const Polygon& z) {
  double d = 0.0;
  for (int i = 0; i < z.n(); ++i) {
    for (int j = i + 1; j < z.n(); ++j) d = std::max(d, std::abs(z[i] - z[j]));
  }
  return d;
}

}  // namespace polyflow
