// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace losnet {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using cplx = std::complex<double>;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Axis-aligned rectangle [x0, x0+width] x [y0, y0+height].
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double width = 0.0;
    double height = 0.0;

    double area() const { return width * height; }
    bool contains(Vec2 p) const {
        return p.x >= x0 && p.x <= x0 + width && p.y >= y0 && p.y <= y0 + height;
    }
    static Rect square(double side) { return Rect{0.0, 0.0, side, side}; }
};

// Error categories. The CLI maps InvalidParameter -> exit 2 and
// PrecisionError -> exit 3.
class InvalidParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class PrecisionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PlanInfeasible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double db_from_linear(double x) { return 10.0 * std::log10(x); }
inline double linear_from_db(double x) { return std::pow(10.0, x / 10.0); }

}  // namespace losnet
