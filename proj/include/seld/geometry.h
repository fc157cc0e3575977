// Copyright 2026 The seldkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SELD_GEOMETRY_H_
#define SELD_GEOMETRY_H_

#include <array>

namespace seld {

// Cartesian direction (or position, when scaled) in the DCASE frame:
// +x front, +y left, +z up. The all-zero vector is the "inactive" sentinel.
struct DirectionVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr DirectionVector Inactive() { return {}; }

  double Norm() const;
  bool IsInactive() const;
  DirectionVector Normalized() const;

  DirectionVector operator*(double s) const { return {x * s, y * s, z * s}; }
  DirectionVector operator+(const DirectionVector& o) const {
    return {x + o.x, y + o.y, z + o.z};
  }
  DirectionVector operator-(const DirectionVector& o) const {
    return {x - o.x, y - o.y, z - o.z};
  }
  bool operator==(const DirectionVector&) const = default;
};

double Dot(const DirectionVector& a, const DirectionVector& b);
DirectionVector Cross(const DirectionVector& a, const DirectionVector& b);

// Degrees. Azimuth in (-180, 180], counter-clockwise from +x; elevation in
// [-90, 90] from the horizontal plane toward +z.
struct AzEl {
  double azimuth = 0.0;
  double elevation = 0.0;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegPerRad = 180.0 / kPi;

DirectionVector AzElToUnit(const AzEl& a);

// Inverse of AzElToUnit. Azimuth is reported as 0 at the poles.
AzEl UnitToAzEl(const DirectionVector& d);

// Great-circle angle in degrees, in [0, 180]. Throws kUndefinedDistance for
// the inactive sentinel.
double AngularDistance(const DirectionVector& a, const DirectionVector& b);

// Spherical-linear interpolation between two unit vectors, frac in [0, 1].
DirectionVector Slerp(const DirectionVector& a, const DirectionVector& b,
                      double frac);

// Rotation about +z by `degrees` (used by equivariance checks and tools).
DirectionVector RotateAboutZ(const DirectionVector& d, double degrees);

}  // namespace seld

#endif  // SELD_GEOMETRY_H_
