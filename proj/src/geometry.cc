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

#include "seld/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "seld/error.h"

namespace seld {

namespace {

constexpr double kSentinelNorm = 1e-12;
constexpr double kUnitTolerance = 1e-6;
constexpr double kPoleHypot = 1e-12;

}  // namespace

double DirectionVector::Norm() const { return std::sqrt(x * x + y * y + z * z); }

bool DirectionVector::IsInactive() const { return Norm() < kSentinelNorm; }

DirectionVector DirectionVector::Normalized() const {
  const double n = Norm();
  if (n < kSentinelNorm) return Inactive();
  return {x / n, y / n, z / n};
}

double Dot(const DirectionVector& a, const DirectionVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

DirectionVector Cross(const DirectionVector& a, const DirectionVector& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

DirectionVector AzElToUnit(const AzEl& a) {
  if (!(a.azimuth > -180.0 && a.azimuth <= 180.0)) {
    throw Error(ErrorCode::kRange, "geometry",
                "azimuth " + std::to_string(a.azimuth) +
                    " outside (-180, 180]");
  }
  if (!(a.elevation >= -90.0 && a.elevation <= 90.0)) {
    throw Error(ErrorCode::kRange, "geometry",
                "elevation " + std::to_string(a.elevation) +
                    " outside [-90, 90]");
  }
  const double az = a.azimuth / kDegPerRad;
  const double el = a.elevation / kDegPerRad;
  return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
          std::sin(el)};
}

AzEl UnitToAzEl(const DirectionVector& d) {
  const double n = d.Norm();
  if (std::abs(n - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::kInvariant, "geometry",
                "direction norm " + std::to_string(n) + " is not unit");
  }
  const double horizontal = std::hypot(d.x, d.y);
  AzEl out;
  out.elevation = std::atan2(d.z, horizontal) * kDegPerRad;
  if (horizontal < kPoleHypot) {
    out.azimuth = 0.0;
    out.elevation = d.z > 0 ? 90.0 : -90.0;
    return out;
  }
  out.azimuth = std::atan2(d.y, d.x) * kDegPerRad;
  if (out.azimuth <= -180.0) out.azimuth += 360.0;
  return out;
}

double AngularDistance(const DirectionVector& a, const DirectionVector& b) {
  if (a.IsInactive() || b.IsInactive()) {
    throw Error(ErrorCode::kUndefinedDistance, "geometry",
                "angular distance to the inactive sentinel");
  }
  // atan2(|a x b|, a . b) equals arccos of the clamped normalized dot product
  // but stays accurate for nearly parallel vectors.
  const double s = Cross(a, b).Norm();
  const double c = Dot(a, b);
  return std::clamp(std::atan2(s, c) * kDegPerRad, 0.0, 180.0);
}

DirectionVector Slerp(const DirectionVector& a, const DirectionVector& b,
                      double frac) {
  const double c = std::clamp(Dot(a, b), -1.0, 1.0);
  const double omega = std::acos(c);
  const double s = std::sin(omega);
  if (s < 1e-9) {
    // Parallel (or antiparallel, which has no unique arc): fall back to the
    // normalized chord.
    DirectionVector chord = a * (1.0 - frac) + b * frac;
    return chord.IsInactive() ? a : chord.Normalized();
  }
  const double wa = std::sin((1.0 - frac) * omega) / s;
  const double wb = std::sin(frac * omega) / s;
  return (a * wa + b * wb).Normalized();
}

DirectionVector RotateAboutZ(const DirectionVector& d, double degrees) {
  const double r = degrees / kDegPerRad;
  const double c = std::cos(r);
  const double s = std::sin(r);
  return {c * d.x - s * d.y, s * d.x + c * d.y, d.z};
}

}  // namespace seld
