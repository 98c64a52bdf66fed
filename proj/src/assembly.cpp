#include "ncfem/assembly.hpp"

#include <algorithm>
#include <cmath>

namespace ncfem {

CsrMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofmap) {
	QuadratureRule rule = quadrature(2); // integrands are degree <= 2
	std::vector<Triplet> triplets;
	triplets.reserve(mesh.triangles.size() * 36);
	std::vector<Vec2> grads;
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		const auto& cell = dofmap.cell_dofs[k];
		size_t nloc = cell.size();
		for (size_t q = 0; q < rule.points.size(); ++q) {
			double w = rule.weights[q] * map.det;
			grads.assign(nloc, {});
			for (size_t a = 0; a < nloc; ++a)
				grads[a] = map.inverse_transpose.apply(eval_gradient(cell[a].basis, rule.points[q]));
			for (size_t a = 0; a < nloc; ++a)
				for (size_t b = 0; b < nloc; ++b)
					triplets.push_back({cell[a].global, cell[b].global, w * dot(grads[a], grads[b])});
		}
	}
	return CsrMatrix(dofmap.n_dofs, triplets);
}

std::vector<double> assemble_load(const Mesh& mesh, const DofMap& dofmap,
                                  const ScalarField& f, int quad_degree) {
	if (quad_degree < 2) throw std::invalid_argument("load quadrature degree must be >= 2");
	QuadratureRule rule = quadrature(quad_degree);
	std::vector<double> rhs(dofmap.n_dofs, 0.0);
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		const auto& cell = dofmap.cell_dofs[k];
		for (size_t q = 0; q < rule.points.size(); ++q) {
			Vec2 x = map.origin + map.jacobian.apply(rule.points[q]);
			double w = rule.weights[q] * map.det * f(x.x, x.y);
			for (const auto& cd : cell)
				rhs[cd.global] += w * eval_basis(cd.basis, rule.points[q]);
		}
	}
	return rhs;
}

std::vector<std::pair<int, double>> dirichlet_values(const Mesh& mesh, const DofMap& dofmap,
                                                     const ScalarField& u_d) {
	std::vector<std::pair<int, double>> values;
	values.reserve(dofmap.boundary_dofs.size());
	int ne = dofmap.n_edge_dofs;
	for (int dof : dofmap.boundary_dofs) {
		if (dof < ne) {
			Vec2 m = mesh.edges[dof].midpoint;
			values.emplace_back(dof, u_d(m.x, m.y));
		} else if (dofmap.kind == ElementKind::P2C) {
			Vec2 v = mesh.vertices[dof - ne];
			values.emplace_back(dof, u_d(v.x, v.y));
		} else {
			// NC1C2 vertex dofs are enrichment coefficients, not point values;
			// prescribe 0 (exact for affine data, where corrections vanish)
			values.emplace_back(dof, 0.0);
		}
	}
	return values;
}

void apply_dirichlet(LinearSystem& system, const std::vector<std::pair<int, double>>& values) {
	int n = system.matrix.dimension();
	std::vector<char> constrained(n, 0);
	std::vector<double> g(n, 0.0);
	for (const auto& [dof, val] : values) {
		constrained.at(dof) = 1;
		g[dof] = val;
	}
	system.dirichlet_values = values;
	std::sort(system.dirichlet_values.begin(), system.dirichlet_values.end());

	if (system.bc_mode == BcMode::penalty) {
		if (system.penalty_eps <= 0.0)
			throw std::invalid_argument("penalty epsilon must be positive");
		std::vector<Triplet> t = system.matrix.to_triplets();
		for (const auto& [dof, val] : values) {
			t.push_back({dof, dof, 1.0 / system.penalty_eps});
			system.rhs[dof] += val / system.penalty_eps;
		}
		system.matrix = CsrMatrix(n, t);
		return;
	}

	// eliminate: fold constrained columns into the rhs, unit rows for
	// constrained dofs; preserves symmetry exactly
	std::vector<Triplet> kept;
	for (const auto& t : system.matrix.to_triplets()) {
		if (constrained[t.row]) continue;
		if (constrained[t.col]) {
			system.rhs[t.row] -= t.value * g[t.col];
			continue;
		}
		kept.push_back(t);
	}
	for (const auto& [dof, val] : values) {
		kept.push_back({dof, dof, 1.0});
		system.rhs[dof] = val;
	}
	system.matrix = CsrMatrix(n, kept);
}

CgResult cg_solve(const LinearSystem& system, double tol, int max_iter) {
	const CsrMatrix& A = system.matrix;
	const std::vector<double>& b = system.rhs;
	int n = A.dimension();
	if (tol <= 0.0) throw std::invalid_argument("cg tolerance must be positive");

	std::vector<double> d = A.diagonal();
	for (int i = 0; i < n; ++i)
		if (d[i] == 0.0) d[i] = 1.0;

	// warm start from the prescribed boundary values so the reference
	// residual reflects the free equations even under penalty scaling
	std::vector<double> x(n, 0.0);
	for (const auto& [dof, val] : system.dirichlet_values) x[dof] = val;

	std::vector<double> r(n), z(n), p(n), Ap(n);
	A.mul_vec(x, r);
	for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
	auto nrm = [n](const std::vector<double>& v) {
		double s = 0.0;
		for (int i = 0; i < n; ++i) s += v[i] * v[i];
		return std::sqrt(s);
	};
	double r0 = nrm(r);
	if (r0 == 0.0) return {x, 0, 0.0};

	for (int i = 0; i < n; ++i) z[i] = r[i] / d[i];
	p = z;
	double rz = 0.0;
	for (int i = 0; i < n; ++i) rz += r[i] * z[i];

	for (int it = 1; it <= max_iter; ++it) {
		A.mul_vec(p, Ap);
		double pap = 0.0;
		for (int i = 0; i < n; ++i) pap += p[i] * Ap[i];
		if (pap <= 0.0)
			throw SolverFailure("cg: matrix not positive definite (p'Ap <= 0)", nrm(r) / r0, it);
		double alpha = rz / pap;
		for (int i = 0; i < n; ++i) {
			x[i] += alpha * p[i];
			r[i] -= alpha * Ap[i];
		}
		double rn = nrm(r);
		if (rn <= tol * r0) return {x, it, rn / r0};
		for (int i = 0; i < n; ++i) z[i] = r[i] / d[i];
		double rz_new = 0.0;
		for (int i = 0; i < n; ++i) rz_new += r[i] * z[i];
		for (int i = 0; i < n; ++i) p[i] = z[i] + (rz_new / rz) * p[i];
		rz = rz_new;
	}
	double rel = nrm(r) / r0;
	throw SolverFailure("cg: max iterations exceeded, relative residual " + std::to_string(rel),
	                    rel, max_iter);
}

double galerkin_residual_check(const LinearSystem& system, const std::vector<double>& x) {
	int n = system.matrix.dimension();
	std::vector<char> constrained(n, 0);
	for (const auto& [dof, val] : system.dirichlet_values) constrained[dof] = 1;
	std::vector<double> Ax(n);
	system.matrix.mul_vec(x, Ax);
	double worst = 0.0;
	for (int i = 0; i < n; ++i)
		if (!constrained[i]) worst = std::max(worst, std::abs(Ax[i] - system.rhs[i]));
	return worst;
}

} // namespace ncfem
