#include "orient/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace orient {

UnitVec3 normalize(const Vec3& a) {
  const double n = norm(a);
  if (n == 0.0) {
    throw std::domain_error("normalize: zero vector");
  }
  return UnitVec3::unchecked(a.x / n, a.y / n, a.z / n);
}

SphericalDirection to_spherical(const UnitVec3& u) {
  const double theta = std::acos(std::clamp(u.z, -1.0, 1.0));
  double phi = 0.0;  // pole convention
  if (std::hypot(u.x, u.y) > 0.0) {
    phi = std::atan2(u.y, u.x);
    if (phi < 0.0) {
      phi += 2.0 * kPi;
    }
  }
  double phi_deg = phi * kDegPerRad;
  if (phi_deg >= 360.0) {
    phi_deg = 0.0;  // atan2 rounding right below 2*pi
  }
  return {phi_deg, theta * kDegPerRad};
}

UnitVec3 from_spherical(const SphericalDirection& s) {
  const double phi = s.phi_deg * kRadPerDeg;
  const double theta = s.theta_deg * kRadPerDeg;
  const double st = std::sin(theta);
  return UnitVec3::unchecked(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
}

UnitVec3 rotate_pole_to(const UnitVec3& mu, const UnitVec3& v) {
  // Rodrigues rotation about k = z x mu with cos = mu.z, sin = ||z x mu||.
  const double s2 = mu.x * mu.x + mu.y * mu.y;
  if (s2 == 0.0) {
    if (mu.z > 0.0) {
      return v;
    }
    return UnitVec3::unchecked(v.x, -v.y, -v.z);  // 180 degrees about x
  }
  const double s = std::sqrt(s2);
  const double c = mu.z;
  const double kx = -mu.y / s;
  const double ky = mu.x / s;
  const double kdv = kx * v.x + ky * v.y;  // k.z = 0
  const Vec3 kxv{ky * v.z, -kx * v.z, kx * v.y - ky * v.x};
  const double omc = 1.0 - c;
  return UnitVec3::unchecked(v.x * c + kxv.x * s + kx * kdv * omc,
                             v.y * c + kxv.y * s + ky * kdv * omc,
                             v.z * c + kxv.z * s);
}

double angle_between(const UnitVec3& a, const UnitVec3& b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

}  // namespace orient
