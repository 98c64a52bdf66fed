#include "ncfem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ncfem {

namespace {

// physical midpoints of the local edges (local edge i joins vertices i, i+1)
std::array<Vec2, 3> local_midpoints(const Mesh& mesh, int k) {
	const auto& tri = mesh.triangles[k];
	std::array<Vec2, 3> m;
	for (int i = 0; i < 3; ++i) {
		Vec2 a = mesh.vertices[tri[i]], b = mesh.vertices[tri[(i + 1) % 3]];
		m[i] = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
	}
	return m;
}

// vertex correction of the two-step construction on element k: the vertex
// value of u minus the CR midpoint interpolant of u evaluated there
std::array<double, 3> vertex_corrections(const Mesh& mesh, int k, const ScalarField& u) {
	const auto& tri = mesh.triangles[k];
	auto mids = local_midpoints(mesh, k);
	double um[3];
	for (int i = 0; i < 3; ++i) um[i] = u(mids[i].x, mids[i].y);
	std::array<double, 3> corr;
	for (int i = 0; i < 3; ++i) {
		Vec2 v = mesh.vertices[tri[i]];
		double interp = um[i] - um[(i + 1) % 3] + um[(i + 2) % 3];
		corr[i] = u(v.x, v.y) - interp;
	}
	return corr;
}

} // namespace

InterpolationResult interpolate(const Mesh& mesh, const DofMap& dofmap, const ScalarField& u) {
	if (dofmap.kind != ElementKind::NC1C2)
		throw std::invalid_argument("interpolate requires an NC1C2 dofmap");
	InterpolationResult res;
	res.function.kind = ElementKind::NC1C2;
	res.function.coefficients.assign(dofmap.n_dofs, 0.0);
	res.max_vertex_discrepancy = 0.0;

	int ne = dofmap.n_edge_dofs;
	for (int e = 0; e < ne; ++e) {
		Vec2 m = mesh.edges[e].midpoint;
		res.function.coefficients[e] = u(m.x, m.y);
	}
	std::vector<char> owned(mesh.vertices.size(), 0);
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		auto corr = vertex_corrections(mesh, static_cast<int>(k), u);
		for (int i = 0; i < 3; ++i) {
			int v = mesh.triangles[k][i];
			if (!owned[v]) {
				owned[v] = 1; // owner = lowest triangle index containing v
				res.function.coefficients[ne + v] = corr[i];
			} else {
				res.max_vertex_discrepancy = std::max(
				    res.max_vertex_discrepancy,
				    std::abs(corr[i] - res.function.coefficients[ne + v]));
			}
		}
	}
	return res;
}

ErrorPair local_interpolation_error(const Mesh& mesh, const ScalarField& u,
                                    const VectorField& grad_u, int quad_degree) {
	QuadratureRule rule = quadrature(quad_degree);
	const ReferenceBasis basis[6] = {
	    {BasisKind::cr_midpoint, 1}, {BasisKind::cr_midpoint, 2}, {BasisKind::cr_midpoint, 3},
	    {BasisKind::quadratic_vertex, 1}, {BasisKind::quadratic_vertex, 2},
	    {BasisKind::quadratic_vertex, 3}};
	double l2 = 0.0, h1 = 0.0;
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		auto mids = local_midpoints(mesh, static_cast<int>(k));
		auto corr = vertex_corrections(mesh, static_cast<int>(k), u);
		double c[6];
		for (int i = 0; i < 3; ++i) c[i] = u(mids[i].x, mids[i].y);
		for (int i = 0; i < 3; ++i) c[3 + i] = corr[i];
		for (size_t q = 0; q < rule.points.size(); ++q) {
			Vec2 x = map.origin + map.jacobian.apply(rule.points[q]);
			double w = rule.weights[q] * map.det;
			double fv = 0.0;
			Vec2 fg{};
			for (int a = 0; a < 6; ++a) {
				fv += c[a] * eval_basis(basis[a], rule.points[q]);
				Vec2 g = map.inverse_transpose.apply(eval_gradient(basis[a], rule.points[q]));
				fg = fg + c[a] * g;
			}
			double dv = u(x.x, x.y) - fv;
			Vec2 dg = grad_u(x.x, x.y) - fg;
			l2 += w * dv * dv;
			h1 += w * dot(dg, dg);
		}
	}
	return {std::sqrt(l2), std::sqrt(h1)};
}

double l2_error(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                const ScalarField& u, int quad_degree) {
	if (quad_degree < 4) throw std::invalid_argument("l2_error needs quad_degree >= 4");
	QuadratureRule rule = quadrature(quad_degree);
	double acc = 0.0;
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		for (size_t q = 0; q < rule.points.size(); ++q) {
			Vec2 x = map.origin + map.jacobian.apply(rule.points[q]);
			double d = u(x.x, x.y) - evaluate(mesh, dofmap, f, static_cast<int>(k), rule.points[q]);
			acc += rule.weights[q] * map.det * d * d;
		}
	}
	return std::sqrt(acc);
}

double h1_broken_error(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                       const VectorField& grad_u, int quad_degree) {
	if (quad_degree < 2) throw std::invalid_argument("h1_broken_error needs quad_degree >= 2");
	QuadratureRule rule = quadrature(quad_degree);
	double acc = 0.0;
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		const auto& cell = dofmap.cell_dofs[k];
		for (size_t q = 0; q < rule.points.size(); ++q) {
			Vec2 x = map.origin + map.jacobian.apply(rule.points[q]);
			Vec2 fg{};
			for (const auto& cd : cell) {
				Vec2 g = map.inverse_transpose.apply(eval_gradient(cd.basis, rule.points[q]));
				fg = fg + f.coefficients[cd.global] * g;
			}
			Vec2 d = grad_u(x.x, x.y) - fg;
			acc += rule.weights[q] * map.det * dot(d, d);
		}
	}
	return std::sqrt(acc);
}

namespace {

double element_energy(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f, int k,
                      const QuadratureRule& rule, const AffineMap& map) {
	double acc = 0.0;
	const auto& cell = dofmap.cell_dofs[k];
	for (size_t q = 0; q < rule.points.size(); ++q) {
		Vec2 fg{};
		for (const auto& cd : cell) {
			Vec2 g = map.inverse_transpose.apply(eval_gradient(cd.basis, rule.points[q]));
			fg = fg + f.coefficients[cd.global] * g;
		}
		acc += rule.weights[q] * map.det * dot(fg, fg);
	}
	return acc;
}

double triangle_diameter(const Mesh& mesh, int k) {
	double h = 0.0;
	for (int le = 0; le < 3; ++le)
		h = std::max(h, mesh.edges[mesh.triangle_edges[k][le]].length);
	return h;
}

} // namespace

double h1_broken_seminorm(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f) {
	QuadratureRule rule = quadrature(2);
	double acc = 0.0;
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		acc += element_energy(mesh, dofmap, f, static_cast<int>(k), rule, map);
	}
	return std::sqrt(acc);
}

ErrorReport error_report(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                         const ScalarField& u, const VectorField& grad_u, int quad_degree) {
	ErrorReport rep;
	rep.l2 = l2_error(mesh, dofmap, f, u, quad_degree);
	rep.h1_broken = h1_broken_error(mesh, dofmap, f, grad_u, quad_degree);
	rep.max_edge_jump_integral = 0.0;
	EdgeQuadrature g2 = edge_gauss(2);
	for (size_t e = 0; e < mesh.edges.size(); ++e) {
		if (mesh.edges[e].boundary) continue;
		double integ = 0.0;
		for (size_t q = 0; q < g2.points.size(); ++q)
			integ += g2.weights[q] * edge_jump(mesh, dofmap, f, static_cast<int>(e), g2.points[q]);
		integ *= mesh.edges[e].length;
		rep.max_edge_jump_integral = std::max(rep.max_edge_jump_integral, std::abs(integ));
	}
	return rep;
}

std::vector<EdgeJumpReport> jump_diagnostics(const Mesh& mesh, const DofMap& dofmap,
                                             const DiscreteFunction& f) {
	EdgeQuadrature g2 = edge_gauss(2);
	EdgeQuadrature g4 = edge_gauss(4);
	QuadratureRule vol = quadrature(2);

	std::vector<double> energy(mesh.triangles.size());
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		energy[k] = element_energy(mesh, dofmap, f, static_cast<int>(k), vol, map);
	}

	std::vector<EdgeJumpReport> reports;
	for (size_t e = 0; e < mesh.edges.size(); ++e) {
		const Edge& edge = mesh.edges[e];
		if (edge.boundary) continue;
		EdgeJumpReport rep;
		rep.edge = static_cast<int>(e);
		double mean = 0.0;
		for (size_t q = 0; q < g2.points.size(); ++q)
			mean += g2.weights[q] * edge_jump(mesh, dofmap, f, rep.edge, g2.points[q]);
		rep.jump_integral = mean * edge.length;
		double sq = 0.0;
		for (size_t q = 0; q < g4.points.size(); ++q) {
			double j = edge_jump(mesh, dofmap, f, rep.edge, g4.points[q]);
			sq += g4.weights[q] * j * j;
		}
		rep.jump_l2_sq = sq * edge.length;
		double denom = 0.0;
		for (int s = 0; s < 2; ++s) {
			int k = edge.neighbors[s];
			double hk = triangle_diameter(mesh, k);
			denom += hk * hk * energy[k];
		}
		double num = edge.length * rep.jump_l2_sq;
		if (denom > 0.0)
			rep.lemma_ratio = num / denom;
		else
			rep.lemma_ratio = num <= 1e-20 ? 0.0 : std::numeric_limits<double>::infinity();
		reports.push_back(rep);
	}
	return reports;
}

double consistency_gap_raw(const Mesh& mesh, const DofMap& dofmap, const VectorField& grad_u,
                           const DiscreteFunction& w) {
	EdgeQuadrature g4 = edge_gauss(4);
	double total = 0.0;
	for (size_t e = 0; e < mesh.edges.size(); ++e) {
		const Edge& edge = mesh.edges[e];
		Vec2 a = mesh.vertices[edge.endpoints[0]];
		Vec2 b = mesh.vertices[edge.endpoints[1]];
		Vec2 tangent = (1.0 / edge.length) * (b - a);
		Vec2 normal = {tangent.y, -tangent.x};
		double s = 0.0;
		for (size_t q = 0; q < g4.points.size(); ++q) {
			double t = g4.points[q];
			Vec2 x = a + t * (b - a);
			double gn = dot(grad_u(x.x, x.y), normal);
			s += g4.weights[q] * gn * edge_jump(mesh, dofmap, w, static_cast<int>(e), t);
		}
		total += s * edge.length;
	}
	return total;
}

double consistency_gap(const Mesh& mesh, const DofMap& dofmap, const VectorField& grad_u,
                       const std::vector<DiscreteFunction>& test_set) {
	double worst = 0.0;
	for (const auto& w : test_set) {
		double norm_h = h1_broken_seminorm(mesh, dofmap, w);
		if (norm_h == 0.0) continue; // constants: gap is identically zero
		double gap = std::abs(consistency_gap_raw(mesh, dofmap, grad_u, w));
		worst = std::max(worst, gap / norm_h);
	}
	return worst;
}

} // namespace ncfem
