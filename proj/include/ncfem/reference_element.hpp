#pragma once

#include <array>
#include <vector>

#include "ncfem/geometry.hpp"

namespace ncfem {

// Reference triangle: vertices b1=(0,0), b2=(1,0), b3=(0,1);
// side midpoints m_i between vertices i and i+1 (mod 3):
// m1=(1/2,0), m2=(1/2,1/2), m3=(0,1/2).
enum class BasisKind {
	quadratic_vertex, // P2 vertex functions: 1 at own vertex, 0 at other vertices and all midpoints
	cr_midpoint,      // affine midpoint-Lagrange functions: 1 at own midpoint, 0 at the others
	p2_midpoint,      // P2 edge bubbles: 1 at own midpoint, 0 at the others and all vertices
};

struct ReferenceBasis {
	BasisKind kind;
	int index; // 1..3 within kind
};

// Pure polynomial evaluation; points outside the triangle evaluate the same
// polynomial (extrapolation), which the tests rely on.
double eval_basis(ReferenceBasis b, Vec2 p);
Vec2 eval_gradient(ReferenceBasis b, Vec2 p);

struct QuadratureRule {
	std::vector<Vec2> points;
	std::vector<double> weights; // sum to 1/2
	int exact_degree;
};

// Symmetric hard-coded rules; accepts 1 <= degree <= 6, throws otherwise.
QuadratureRule quadrature(int degree);

// Gauss rules on [0,1] with weights summing to 1; n = 2 (exact degree 3)
// or n = 4 (exact degree 7).
struct EdgeQuadrature {
	std::vector<double> points;
	std::vector<double> weights;
};
EdgeQuadrature edge_gauss(int n);

struct UnisolvenceReport {
	std::array<std::array<double, 6>, 6> matrix; // functionals x basis functions
	double max_identity_deviation;
	double condition_number; // 1-norm condition estimate
};

// The six local functionals (3 vertex values corrected by the midpoint
// interpolant, 3 midpoint values) applied to the six basis functions
// (quadratic_vertex 1..3, cr_midpoint 1..3). Identity iff unisolvent.
UnisolvenceReport unisolvence_certificate();

} // namespace ncfem
