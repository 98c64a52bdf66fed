#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncfem/csr_matrix.hpp"
#include "ncfem/dof_map.hpp"
#include "ncfem/mesh.hpp"

namespace ncfem {

using ScalarField = std::function<double(double, double)>;
using VectorField = std::function<Vec2(double, double)>;

enum class BcMode { eliminate, penalty };

struct LinearSystem {
	CsrMatrix matrix;
	std::vector<double> rhs;
	BcMode bc_mode = BcMode::eliminate;
	double penalty_eps = 1e-10;
	// (dof, prescribed value), ascending dof; filled by apply_dirichlet
	std::vector<std::pair<int, double>> dirichlet_values;
};

// Entry (i,j) = sum_K int_K grad(phi_i).grad(phi_j); degree-2 quadrature (exact).
CsrMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofmap);

// Component i = sum_K int_K f phi_i; requires quad_degree >= 2.
std::vector<double> assemble_load(const Mesh& mesh, const DofMap& dofmap,
                                  const ScalarField& f, int quad_degree);

// Prescribed boundary values per element kind: edge dofs get u_D at the edge
// midpoint; NC1C2 vertex dofs get 0; P2C vertex dofs get u_D at the vertex.
std::vector<std::pair<int, double>> dirichlet_values(const Mesh& mesh, const DofMap& dofmap,
                                                     const ScalarField& u_d);

// eliminate: symmetric row/column elimination (columns folded into rhs, unit
// diagonal, rhs = prescribed value); penalty: diagonal += 1/eps, rhs += g/eps.
// Throws std::invalid_argument for penalty with eps <= 0.
void apply_dirichlet(LinearSystem& system, const std::vector<std::pair<int, double>>& values);

struct SolverFailure : std::runtime_error {
	SolverFailure(const std::string& what, double residual_, int iterations_)
	    : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
	double residual;
	int iterations;
};

struct CgResult {
	std::vector<double> x;
	int iterations;
	double relative_residual;
};

// Jacobi-preconditioned CG. Starts from x0 = prescribed Dirichlet values
// (zero elsewhere) and stops at ||b - Ax|| <= tol * ||b - Ax0||; throws
// SolverFailure when max_iter is exceeded.
CgResult cg_solve(const LinearSystem& system, double tol, int max_iter);

// max |(A x - b)_i| over free (unconstrained) dofs.
double galerkin_residual_check(const LinearSystem& system, const std::vector<double>& x);

} // namespace ncfem
