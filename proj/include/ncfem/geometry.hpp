#pragma once

#include <cmath>

namespace ncfem {

struct Vec2 {
	double x = 0.0;
	double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// 2x2 matrix, row-major
struct Mat2 {
	double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;

	double det() const { return a00 * a11 - a01 * a10; }
	Vec2 apply(Vec2 v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
	Mat2 transpose() const { return {a00, a10, a01, a11}; }
	Mat2 inverse() const {
		double d = det();
		return {a11 / d, -a01 / d, -a10 / d, a00 / d};
	}
	Mat2 mul(const Mat2& o) const {
		return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
		        a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
	}
};

} // namespace ncfem
