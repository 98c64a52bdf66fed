#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "ncfem/analysis.hpp"
#include "ncfem/assembly.hpp"
#include "ncfem/study.hpp"

using Catch::Approx;
using namespace ncfem;

namespace {

Mesh reference_triangle_mesh() {
	Mesh mesh;
	mesh.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
	mesh.triangles = {{0, 1, 2}};
	build_edges(mesh);
	return mesh;
}

DiscreteFunction random_function(const DofMap& dofmap, unsigned seed) {
	std::mt19937 rng(seed);
	std::uniform_real_distribution<double> unif(-1.0, 1.0);
	DiscreteFunction f{dofmap.kind, std::vector<double>(dofmap.n_dofs)};
	for (double& c : f.coefficients) c = unif(rng);
	return f;
}

} // namespace

TEST_CASE("local stiffness of the midpoint element on the reference triangle", "[assembly]") {
	Mesh mesh = reference_triangle_mesh();
	DofMap cr = build_dofmap(mesh, ElementKind::CR);
	CsrMatrix A = assemble_stiffness(mesh, cr);
	const double expected[3][3] = {{2, -2, 0}, {-2, 4, -2}, {0, -2, 2}};
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < 3; ++j)
			CHECK(A.value(i, j) == Approx(expected[i][j]).margin(1e-14));
}

TEST_CASE("load vector for unit source on the reference triangle", "[assembly]") {
	Mesh mesh = reference_triangle_mesh();
	auto one = [](double, double) { return 1.0; };
	DofMap cr = build_dofmap(mesh, ElementKind::CR);
	std::vector<double> b = assemble_load(mesh, cr, one, 2);
	for (int i = 0; i < 3; ++i) CHECK(b[i] == Approx(1.0 / 6.0));
	// enrichment components vanish: quadratic vertex functions have zero mean
	DofMap nc = build_dofmap(mesh, ElementKind::NC1C2);
	std::vector<double> bn = assemble_load(mesh, nc, one, 2);
	for (int i = 0; i < 3; ++i) CHECK(bn[i] == Approx(1.0 / 6.0));
	for (int i = 3; i < 6; ++i) CHECK(bn[i] == Approx(0.0).margin(1e-15));
	CHECK_THROWS_AS(assemble_load(mesh, cr, one, 1), std::invalid_argument);
}

TEST_CASE("stiffness row sums and the constant kernel", "[assembly]") {
	Mesh mesh = generate_structured(2);
	for (ElementKind kind : {ElementKind::CR, ElementKind::P2C}) {
		DofMap dofmap = build_dofmap(mesh, kind);
		CsrMatrix A = assemble_stiffness(mesh, dofmap);
		for (int i = 0; i < A.dimension(); ++i) {
			double sum = 0.0;
			for (int j = 0; j < A.dimension(); ++j) sum += A.value(i, j);
			CHECK(std::abs(sum) <= 1e-12); // constants are in both spaces
		}
	}
	// the enriched element represents 1 as (edge dofs 1, vertex dofs 0), and its
	// row sums do not vanish (the six local functions do not sum to a constant)
	DofMap nc = build_dofmap(mesh, ElementKind::NC1C2);
	CsrMatrix A = assemble_stiffness(mesh, nc);
	std::vector<double> ones(nc.n_dofs, 0.0), Av(nc.n_dofs);
	for (int e = 0; e < nc.n_edge_dofs; ++e) ones[e] = 1.0;
	A.mul_vec(ones, Av);
	double max_kernel = 0.0, max_row_sum = 0.0;
	for (int i = 0; i < nc.n_dofs; ++i) {
		max_kernel = std::max(max_kernel, std::abs(Av[i]));
		double sum = 0.0;
		for (int j = 0; j < nc.n_dofs; ++j) sum += A.value(i, j);
		max_row_sum = std::max(max_row_sum, std::abs(sum));
	}
	CHECK(max_kernel <= 1e-12);
	CHECK(max_row_sum == Approx(16.0 / 3.0).margin(1e-9));
}

TEST_CASE("assembled matrices are exactly symmetric", "[assembly]") {
	Mesh mesh = generate_structured(3);
	for (ElementKind kind : {ElementKind::NC1C2, ElementKind::CR, ElementKind::P2C}) {
		DofMap dofmap = build_dofmap(mesh, kind);
		CsrMatrix A = assemble_stiffness(mesh, dofmap);
		CHECK(A.symmetry_defect() <= 1e-15);
	}
}

TEST_CASE("energy product equals the quadratured broken seminorm", "[assembly]") {
	Mesh mesh = generate_structured(3);
	for (ElementKind kind : {ElementKind::NC1C2, ElementKind::CR, ElementKind::P2C}) {
		DofMap dofmap = build_dofmap(mesh, kind);
		CsrMatrix A = assemble_stiffness(mesh, dofmap);
		for (unsigned seed = 1; seed <= 5; ++seed) {
			DiscreteFunction v = random_function(dofmap, seed);
			std::vector<double> Av(dofmap.n_dofs);
			A.mul_vec(v.coefficients, Av);
			double vav = 0.0;
			for (int i = 0; i < dofmap.n_dofs; ++i) vav += v.coefficients[i] * Av[i];
			double semi = h1_broken_seminorm(mesh, dofmap, v);
			CHECK(vav == Approx(semi * semi).epsilon(1e-10));
		}
	}
}

TEST_CASE("dirichlet values per element kind", "[assembly]") {
	Mesh mesh = generate_structured(2);
	auto u_d = [](double x, double y) { return x + 2.0 * y; };
	DofMap nc = build_dofmap(mesh, ElementKind::NC1C2);
	for (const auto& [dof, val] : dirichlet_values(mesh, nc, u_d)) {
		if (dof < nc.n_edge_dofs) {
			Vec2 m = mesh.edges[dof].midpoint;
			CHECK(val == Approx(m.x + 2.0 * m.y));
		} else {
			CHECK(val == 0.0); // enrichment coefficients vanish on the boundary
		}
	}
	DofMap p2 = build_dofmap(mesh, ElementKind::P2C);
	for (const auto& [dof, val] : dirichlet_values(mesh, p2, u_d)) {
		Vec2 p = dof < p2.n_edge_dofs ? mesh.edges[dof].midpoint
		                              : mesh.vertices[dof - p2.n_edge_dofs];
		CHECK(val == Approx(p.x + 2.0 * p.y));
	}
}

TEST_CASE("one-free-dof solve on the coarsest mesh", "[solve]") {
	// CR on n=1: only the diagonal-edge dof is free; A_dd = 8, b_d = 1/3
	Mesh mesh = generate_structured(1);
	DofMap cr = build_dofmap(mesh, ElementKind::CR);
	auto one = [](double, double) { return 1.0; };
	auto zero = [](double, double) { return 0.0; };
	LinearSystem system;
	system.matrix = assemble_stiffness(mesh, cr);
	system.rhs = assemble_load(mesh, cr, one, 2);
	apply_dirichlet(system, dirichlet_values(mesh, cr, zero));
	CgResult res = cg_solve(system, 1e-12, 100);
	CHECK(res.x[2] == Approx(1.0 / 24.0));
	CHECK(res.iterations == 1); // diagonal system after elimination
	for (int d : cr.boundary_dofs) CHECK(res.x[d] == 0.0);
	CHECK(galerkin_residual_check(system, res.x) <= 1e-13);
}

TEST_CASE("elimination and penalty agree", "[solve]") {
	StudyConfig config;
	config.element = ElementKind::NC1C2;
	SolveResult elim = solve_single(config, 4);
	config.bc = BcMode::penalty;
	SolveResult pen = solve_single(config, 4);
	double max_diff = 0.0;
	for (size_t i = 0; i < elim.solution.coefficients.size(); ++i)
		max_diff = std::max(max_diff,
		                    std::abs(elim.solution.coefficients[i] - pen.solution.coefficients[i]));
	CHECK(max_diff <= 1e-7);
	CHECK(pen.l2_error == Approx(elim.l2_error).epsilon(1e-5));
}

TEST_CASE("penalty parameter must be positive", "[solve]") {
	Mesh mesh = generate_structured(1);
	DofMap cr = build_dofmap(mesh, ElementKind::CR);
	auto zero = [](double, double) { return 0.0; };
	LinearSystem system;
	system.matrix = assemble_stiffness(mesh, cr);
	system.rhs = assemble_load(mesh, cr, zero, 2);
	system.bc_mode = BcMode::penalty;
	system.penalty_eps = 0.0;
	CHECK_THROWS_AS(apply_dirichlet(system, dirichlet_values(mesh, cr, zero)),
	                std::invalid_argument);
}

TEST_CASE("cg closed-form examples", "[solve]") {
	LinearSystem identity;
	identity.matrix = CsrMatrix(2, {{0, 0, 1.0}, {1, 1, 1.0}});
	identity.rhs = {3.0, -1.0};
	CgResult res = cg_solve(identity, 1e-12, 10);
	CHECK(res.iterations == 1);
	CHECK(res.x[0] == Approx(3.0));
	CHECK(res.x[1] == Approx(-1.0));

	LinearSystem small;
	small.matrix = CsrMatrix(2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
	small.rhs = {1.0, 0.0};
	res = cg_solve(small, 1e-12, 10);
	CHECK(res.iterations <= 2);
	CHECK(res.x[0] == Approx(2.0 / 3.0).margin(1e-12));
	CHECK(res.x[1] == Approx(1.0 / 3.0).margin(1e-12));
	CHECK(res.relative_residual <= 1e-12);
}

TEST_CASE("cg failure modes", "[solve]") {
	LinearSystem indefinite;
	indefinite.matrix = CsrMatrix(2, {{0, 0, 1.0}, {1, 1, -1.0}});
	indefinite.rhs = {1.0, 1.0};
	CHECK_THROWS_AS(cg_solve(indefinite, 1e-10, 10), SolverFailure);

	LinearSystem starved;
	starved.matrix = CsrMatrix(2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
	starved.rhs = {1.0, 0.0};
	try {
		cg_solve(starved, 1e-14, 1);
		FAIL("expected SolverFailure");
	} catch (const SolverFailure& failure) {
		CHECK(failure.iterations == 1);
		CHECK(failure.residual > 0.0);
	}
	CHECK_THROWS_AS(cg_solve(starved, -1.0, 10), std::invalid_argument);
}

TEST_CASE("matrix market export", "[matrix]") {
	CsrMatrix A(2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
	std::ostringstream out;
	export_matrix_market(A, out);
	std::istringstream in(out.str());
	std::string line;
	std::getline(in, line);
	CHECK(line == "%%MatrixMarket matrix coordinate real symmetric");
	std::getline(in, line);
	CHECK(line == "2 2 3"); // lower triangle only
	std::getline(in, line);
	CHECK(line == "1 1 2");
	std::getline(in, line);
	CHECK(line == "2 1 -1");
	std::getline(in, line);
	CHECK(line == "2 2 2");
}

TEST_CASE("csr assembly accumulates duplicates", "[matrix]") {
	CsrMatrix A(2, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 0, -1.0}});
	CHECK(A.value(0, 0) == 3.0);
	CHECK(A.value(1, 0) == -1.0);
	CHECK(A.value(0, 1) == 0.0);
	CHECK(A.n_nonzeros() == 2);
	CHECK_THROWS_AS(CsrMatrix(2, {{2, 0, 1.0}}), std::invalid_argument);
}
