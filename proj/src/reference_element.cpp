#include "ncfem/reference_element.hpp"

#include <cmath>
#include <stdexcept>

namespace ncfem {

double eval_basis(ReferenceBasis b, Vec2 p) {
	double x = p.x, y = p.y;
	switch (b.kind) {
	case BasisKind::quadratic_vertex:
		switch (b.index) {
		case 1: return (-1.0 + 2.0 * x + 2.0 * y) * (-1.0 + x + y);
		case 2: return (2.0 * x - 1.0) * x;
		case 3: return (2.0 * y - 1.0) * y;
		}
		break;
	case BasisKind::cr_midpoint:
		switch (b.index) {
		case 1: return 1.0 - 2.0 * y;
		case 2: return -1.0 + 2.0 * x + 2.0 * y;
		case 3: return 1.0 - 2.0 * x;
		}
		break;
	case BasisKind::p2_midpoint:
		switch (b.index) {
		case 1: return 4.0 * x * (1.0 - x - y);
		case 2: return 4.0 * x * y;
		case 3: return 4.0 * y * (1.0 - x - y);
		}
		break;
	}
	throw std::invalid_argument("basis index out of range");
}

Vec2 eval_gradient(ReferenceBasis b, Vec2 p) {
	double x = p.x, y = p.y;
	switch (b.kind) {
	case BasisKind::quadratic_vertex:
		switch (b.index) {
		case 1: return {4.0 * x + 4.0 * y - 3.0, 4.0 * x + 4.0 * y - 3.0};
		case 2: return {4.0 * x - 1.0, 0.0};
		case 3: return {0.0, 4.0 * y - 1.0};
		}
		break;
	case BasisKind::cr_midpoint:
		switch (b.index) {
		case 1: return {0.0, -2.0};
		case 2: return {2.0, 2.0};
		case 3: return {-2.0, 0.0};
		}
		break;
	case BasisKind::p2_midpoint:
		switch (b.index) {
		case 1: return {4.0 * (1.0 - 2.0 * x - y), -4.0 * x};
		case 2: return {4.0 * y, 4.0 * x};
		case 3: return {-4.0 * y, 4.0 * (1.0 - x - 2.0 * y)};
		}
		break;
	}
	throw std::invalid_argument("basis index out of range");
}

namespace {

// appends the 3 permutations of barycentric (a, a, 1-2a) as (x,y) = (l2, l3)
void push_perm3(QuadratureRule& r, double a, double w) {
	double c = 1.0 - 2.0 * a;
	r.points.push_back({a, c});
	r.points.push_back({c, a});
	r.points.push_back({a, a});
	for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

// appends the 6 permutations of barycentric (a, b, 1-a-b)
void push_perm6(QuadratureRule& r, double a, double b, double w) {
	double c = 1.0 - a - b;
	r.points.push_back({b, c});
	r.points.push_back({c, b});
	r.points.push_back({a, c});
	r.points.push_back({c, a});
	r.points.push_back({a, b});
	r.points.push_back({b, a});
	for (int i = 0; i < 6; ++i) r.weights.push_back(w);
}

} // namespace

QuadratureRule quadrature(int degree) {
	if (degree < 1 || degree > 6)
		throw std::invalid_argument("quadrature degree must be in [1,6]");
	QuadratureRule r;
	if (degree <= 2) {
		// midpoint rule, exact through degree 2
		r.exact_degree = 2;
		r.points = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
		r.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
	} else if (degree <= 4) {
		// 6-point rule, exact through degree 4
		r.exact_degree = 4;
		push_perm3(r, 0.445948490915964886318329253883051,
		           0.5 * 0.223381589678011471811203136894619);
		push_perm3(r, 0.091576213509770743459571463402202,
		           0.5 * 0.109951743655321868602240538601173);
	} else if (degree == 5) {
		// 7-point rule, exact through degree 5
		r.exact_degree = 5;
		r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
		r.weights.push_back(0.5 * 0.225);
		push_perm3(r, 0.470142064105115089770441209513447,
		           0.5 * 0.132394152788506180737647387833160);
		push_perm3(r, 0.101286507323456338800987361915123,
		           0.5 * 0.125939180544827152595683945500181);
	} else {
		// 12-point rule, exact through degree 6
		r.exact_degree = 6;
		push_perm3(r, 0.249286745170910421291638553107019,
		           0.5 * 0.116786275726379366040199316975887);
		push_perm3(r, 0.063089014491502228340331602870819,
		           0.5 * 0.050844906370206816920936809108869);
		push_perm6(r, 0.310352451033784405416607733956552,
		           0.053145049844816947353249671631398,
		           0.5 * 0.082851075618373575193553456420442);
	}
	return r;
}

EdgeQuadrature edge_gauss(int n) {
	if (n == 2) {
		double d = 0.5 / std::sqrt(3.0);
		return {{0.5 - d, 0.5 + d}, {0.5, 0.5}};
	}
	if (n == 4) {
		double x1 = 0.861136311594053, x2 = 0.339981043584856;
		double w1 = 0.347854845137454, w2 = 0.652145154862546;
		return {{0.5 - 0.5 * x1, 0.5 - 0.5 * x2, 0.5 + 0.5 * x2, 0.5 + 0.5 * x1},
		        {0.5 * w1, 0.5 * w2, 0.5 * w2, 0.5 * w1}};
	}
	throw std::invalid_argument("edge_gauss supports 2 or 4 points");
}

namespace {

// 1-norm condition number of a 6x6 matrix by Gauss-Jordan inversion
double cond1_6x6(const std::array<std::array<double, 6>, 6>& m) {
	double a[6][12] = {};
	for (int i = 0; i < 6; ++i) {
		for (int j = 0; j < 6; ++j) a[i][j] = m[i][j];
		a[i][6 + i] = 1.0;
	}
	for (int c = 0; c < 6; ++c) {
		int p = c;
		for (int i = c + 1; i < 6; ++i)
			if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
		for (int j = 0; j < 12; ++j) std::swap(a[c][j], a[p][j]);
		double piv = a[c][c];
		if (piv == 0.0) throw std::runtime_error("singular matrix");
		for (int j = 0; j < 12; ++j) a[c][j] /= piv;
		for (int i = 0; i < 6; ++i) {
			if (i == c) continue;
			double f = a[i][c];
			for (int j = 0; j < 12; ++j) a[i][j] -= f * a[c][j];
		}
	}
	double nm = 0.0, ni = 0.0;
	for (int j = 0; j < 6; ++j) {
		double sm = 0.0, si = 0.0;
		for (int i = 0; i < 6; ++i) {
			sm += std::abs(m[i][j]);
			si += std::abs(a[i][6 + j]);
		}
		nm = std::max(nm, sm);
		ni = std::max(ni, si);
	}
	return nm * ni;
}

} // namespace

UnisolvenceReport unisolvence_certificate() {
	const Vec2 verts[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
	const Vec2 mids[3] = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
	const ReferenceBasis basis[6] = {
	    {BasisKind::quadratic_vertex, 1}, {BasisKind::quadratic_vertex, 2},
	    {BasisKind::quadratic_vertex, 3}, {BasisKind::cr_midpoint, 1},
	    {BasisKind::cr_midpoint, 2},      {BasisKind::cr_midpoint, 3}};

	UnisolvenceReport rep{};
	for (int j = 0; j < 6; ++j) {
		double mv[3], vv[3];
		for (int i = 0; i < 3; ++i) mv[i] = eval_basis(basis[j], mids[i]);
		for (int i = 0; i < 3; ++i) vv[i] = eval_basis(basis[j], verts[i]);
		for (int i = 0; i < 3; ++i) {
			// vertex functional: value at vertex i minus the midpoint
			// interpolant there (cr values at vertex i: own edge +1,
			// incoming edge +1, opposite edge -1)
			double interp = mv[i] - mv[(i + 1) % 3] + mv[(i + 2) % 3];
			rep.matrix[i][j] = vv[i] - interp;
			rep.matrix[3 + i][j] = mv[i];
		}
	}
	double dev = 0.0;
	for (int i = 0; i < 6; ++i)
		for (int j = 0; j < 6; ++j)
			dev = std::max(dev, std::abs(rep.matrix[i][j] - (i == j ? 1.0 : 0.0)));
	rep.max_identity_deviation = dev;
	rep.condition_number = cond1_6x6(rep.matrix);
	return rep;
}

} // namespace ncfem
