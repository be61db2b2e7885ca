#include "geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace adsmax {

namespace disk {

double distance(cplx z, cplx w) {
  double r = std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
  r = std::min(r, 1.0 - 1e-16);
  return 2.0 * std::atanh(r);
}

cplx midpoint(cplx z, cplx w) {
  cplx m = (w - z) / (1.0 - std::conj(z) * w);
  double am = std::abs(m);
  if (am < 1e-300) return z;
  double d = 2.0 * std::atanh(std::min(am, 1.0 - 1e-16));
  cplx mp = std::tanh(d / 4.0) * m / am;
  return (mp + z) / (1.0 + std::conj(z) * mp);
}

cplx apply(const Mat2c& m, cplx z) {
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

Mat2c translation(cplx p) {
  double s = 1.0 / std::sqrt(1.0 - std::norm(p));
  Mat2c m;
  m << s, s * p, s * std::conj(p), s;
  return m;
}

Mat2c rotation(double psi) {
  Mat2c m;
  m << std::polar(1.0, psi / 2.0), 0.0, 0.0, std::polar(1.0, -psi / 2.0);
  return m;
}

// Cayley matrix mapping the upper half plane to the disk: w = (z-i)/(z+i).
static const Mat2c& cayley() {
  static const Mat2c c = [] {
    Mat2c m;
    m << cplx(1, 0), cplx(0, -1), cplx(1, 0), cplx(0, 1);
    return m;
  }();
  return c;
}

Mat2d to_real(const Mat2c& m) {
  Mat2c r = cayley().inverse() * m * cayley();
  if (r.imag().cwiseAbs().maxCoeff() > 1e-9 * (1.0 + r.real().cwiseAbs().maxCoeff()))
    throw std::runtime_error("disk::to_real: matrix is not conjugate to a real one");
  Mat2d out = r.real();
  double det = out.determinant();
  if (det <= 0.0)
    throw std::runtime_error("disk::to_real: nonpositive determinant");
  return out / std::sqrt(det);
}

Mat2c from_real(const Mat2d& m) {
  return cayley() * m.cast<cplx>() * cayley().inverse();
}

}  // namespace disk

TriangleAngles hyperbolic_angles(double a, double b, double c) {
  const double ca = std::cosh(a), cb = std::cosh(b), cc = std::cosh(c);
  const double sa = std::sinh(a), sb = std::sinh(b), sc = std::sinh(c);
  auto clamp = [](double x) { return std::max(-1.0, std::min(1.0, x)); };
  TriangleAngles t;
  t.alpha = std::acos(clamp((cb * cc - ca) / (sb * sc)));
  t.beta = std::acos(clamp((ca * cc - cb) / (sa * sc)));
  t.gamma = std::acos(clamp((ca * cb - cc) / (sa * sb)));
  t.area = M_PI - t.alpha - t.beta - t.gamma;
  return t;
}

TriangleAngles euclidean_angles(double a, double b, double c) {
  auto clamp = [](double x) { return std::max(-1.0, std::min(1.0, x)); };
  TriangleAngles t;
  t.alpha = std::acos(clamp((b * b + c * c - a * a) / (2 * b * c)));
  t.beta = std::acos(clamp((a * a + c * c - b * b) / (2 * a * c)));
  t.gamma = M_PI - t.alpha - t.beta;
  t.area = 0.5 * b * c * std::sin(t.alpha);
  return t;
}

bool triangle_inequality_ok(double a, double b, double c) {
  return a > 0 && b > 0 && c > 0 && a < b + c && b < a + c && c < a + b;
}

const Octagon& Octagon::regular() {
  static const Octagon oct = [] {
    Octagon o;
    const double cot8 = 1.0 / std::tan(M_PI / 8.0);
    o.circumradius = std::acosh(cot8 * cot8);
    o.apothem = std::acosh(cot8);
    o.side_length = 2.0 * o.apothem;
    o.euclid_corner = std::tanh(o.circumradius / 2.0);
    o.euclid_mid = std::tanh(o.apothem / 2.0);
    for (int k = 0; k < 8; ++k) {
      o.corners[k] = std::polar(o.euclid_corner, (2 * k + 1) * M_PI / 8.0);
      o.side_midpoints[k] = std::polar(o.euclid_mid, (k + 1) * M_PI / 4.0);
    }
    // pairing isometry carrying source side onto target side: maps the source
    // midpoint's inward normal to the target midpoint's outward normal.
    auto pairing = [&](int tgt, int src) {
      double th_in = (src + 1) * M_PI / 4.0 + M_PI;
      double th_out = (tgt + 1) * M_PI / 4.0;
      return disk::translation(o.side_midpoints[tgt]) * disk::rotation(th_out - th_in) *
             disk::translation(-o.side_midpoints[src]);
    };
    o.gen_sides = {{{0, 2}, {3, 1}, {4, 6}, {7, 5}}};
    for (int g = 0; g < 4; ++g)
      o.gens_disk[g] = pairing(o.gen_sides[g][0], o.gen_sides[g][1]);
    for (int g = 0; g < 4; ++g) o.gens_real[g] = disk::to_real(o.gens_disk[g]);
    return o;
  }();
  return oct;
}

}  // namespace adsmax
