#pragma once

#include <Eigen/Dense>
#include <complex>

namespace adsmax {

using cplx = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat2d = Eigen::Matrix2d;

// Poincare-disk model. Isometries are SU(1,1)-like Moebius matrices acting by
// z -> (az+b)/(cz+d); the Cayley transform conjugates them to real SL(2,R).
namespace disk {

double distance(cplx z, cplx w);
cplx midpoint(cplx z, cplx w);
cplx apply(const Mat2c& m, cplx z);

Mat2c translation(cplx p);   // 0 -> p
Mat2c rotation(double psi);  // about 0

Mat2d to_real(const Mat2c& m);    // conjugate to SL(2,R) via Cayley
Mat2c from_real(const Mat2d& m);

}  // namespace disk

// Regular hyperbolic octagon with interior angle pi/4, centered at the origin.
// Corners sit at angles (2k+1)pi/8, side midpoints at (k+1)pi/4.
struct Octagon {
  double circumradius;     // center -> corner
  double apothem;          // center -> side midpoint
  double side_length;
  double euclid_corner;    // tanh(circumradius/2)
  double euclid_mid;
  std::array<cplx, 8> corners;
  std::array<cplx, 8> side_midpoints;
  // canonical generators a,b,c,d with [a,b][c,d] = +-I;
  // generator g maps its source side onto its target side and carries the
  // fundamental tile to the neighbor across the target side.
  std::array<Mat2c, 4> gens_disk;
  std::array<Mat2d, 4> gens_real;
  // per generator: {target side, source side}
  std::array<std::array<int, 2>, 4> gen_sides;

  static const Octagon& regular();
};

// Interior angles of a geodesic triangle from its side lengths.
// lengths = (a,b,c) with a opposite the first angle, etc.
struct TriangleAngles {
  double alpha, beta, gamma;
  double area;
};
TriangleAngles hyperbolic_angles(double a, double b, double c);
TriangleAngles euclidean_angles(double a, double b, double c);

bool triangle_inequality_ok(double a, double b, double c);

}  // namespace adsmax
