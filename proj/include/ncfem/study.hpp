#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ncfem/analysis.hpp"
#include "ncfem/assembly.hpp"

namespace ncfem {

enum class ProblemKind { sine, patch, quad };

struct Problem {
	ProblemKind kind;
	ScalarField f;
	ScalarField u;
	VectorField grad_u;
	bool homogeneous; // zero Dirichlet data
};

// sine:  u = sin(pi x) sin(pi y),  f = 2 pi^2 sin(pi x) sin(pi y), homogeneous
// patch: u = 1 + 2x + 3y,          f = 0
// quad:  u = x^2 + y^2,            f = -4   (penalty mode only)
Problem make_problem(ProblemKind kind);

struct StudyConfig {
	ProblemKind problem = ProblemKind::sine;
	ElementKind element = ElementKind::NC1C2;
	int n0 = 8;
	int levels = 4;
	BcMode bc = BcMode::eliminate;
	double penalty_eps = 1e-10;
	int quad_degree = 6;
	double tol = 1e-10;
	bool deterministic = false;
};

struct StudyRow {
	int level;
	int n;
	double h;
	int ndofs;
	double l2_error;
	double h1_error;
	std::optional<double> l2_eoc; // empty on the first level
	std::optional<double> h1_eoc;
	int cg_iters;
	double wall_time_s;
};

// EOC between consecutive levels with h halved: log2(coarse/fine).
double eoc(double error_coarse, double error_fine);

struct StudyReport {
	std::vector<StudyRow> rows;
	bool solver_failed = false;
	std::string failure_message;
};

// Levels l = 0..levels-1 with n = n0*2^l; requires n0 >= 2, levels >= 2.
// A solver failure aborts the study; the report keeps the completed rows.
StudyReport run_study(const StudyConfig& config);

struct SolveResult {
	Mesh mesh;
	DofMap dofmap;
	DiscreteFunction solution;
	LinearSystem system;
	int cg_iters;
	double l2_error;
	double h1_error;
};

SolveResult solve_single(const StudyConfig& config, int n);

// header: level,n,h,ndofs,l2_error,h1_error,l2_eoc,h1_eoc,cg_iters,wall_time_s
// floats in shortest round-trip decimal; EOC cells of the first row empty.
void emit_csv(const std::vector<StudyRow>& rows, std::ostream& out);
std::vector<StudyRow> parse_csv(std::istream& in); // round-trip helper

std::string format_double(double v); // shortest round-trip

} // namespace ncfem
