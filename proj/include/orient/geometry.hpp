#pragma once

#include <cmath>
#include <numbers>

namespace orient {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;
inline constexpr double kRadPerDeg = std::numbers::pi / 180.0;

// 3-vector; m/s^2 when it carries an acceleration, dimensionless otherwise.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Direction on the unit sphere: ||(x,y,z)|| = 1 within 1e-9. Construct with
// normalize() / from_spherical(); unchecked() is for math that preserves the
// norm by construction.
struct UnitVec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  Vec3 vec() const { return {x, y, z}; }
  static UnitVec3 unchecked(double x, double y, double z) { return {x, y, z}; }
  friend bool operator==(const UnitVec3&, const UnitVec3&) = default;
};

inline double dot(const UnitVec3& a, const UnitVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double dot(const UnitVec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Orientation angles in degrees: phi in [0,360), theta in [0,180], theta=0 at +z.
struct SphericalDirection {
  double phi_deg = 0.0;
  double theta_deg = 0.0;
};

// a / ||a||; throws std::domain_error on a zero vector (corrupt sample).
UnitVec3 normalize(const Vec3& a);

// theta = arccos(z), phi = atan2(y,x) wrapped to [0,360); phi = 0 at the poles.
SphericalDirection to_spherical(const UnitVec3& u);

UnitVec3 from_spherical(const SphericalDirection& s);

// Applies the rotation that takes the north pole (0,0,1) onto mu. When
// mu = (0,0,-1) the rotation is fixed as 180 degrees about the x-axis.
UnitVec3 rotate_pole_to(const UnitVec3& mu, const UnitVec3& v);

// Angle in radians between two directions.
double angle_between(const UnitVec3& a, const UnitVec3& b);

}  // namespace orient
