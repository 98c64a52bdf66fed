#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ncfem/study.hpp"

namespace {

const std::map<std::string, ncfem::ProblemKind> problem_names{
    {"sine", ncfem::ProblemKind::sine},
    {"patch", ncfem::ProblemKind::patch},
    {"quad", ncfem::ProblemKind::quad}};
const std::map<std::string, ncfem::ElementKind> element_names{
    {"nc1c2", ncfem::ElementKind::NC1C2},
    {"cr", ncfem::ElementKind::CR},
    {"p2", ncfem::ElementKind::P2C}};
const std::map<std::string, ncfem::BcMode> bc_names{
    {"eliminate", ncfem::BcMode::eliminate},
    {"penalty", ncfem::BcMode::penalty}};

int invalid(const std::string& message) {
	std::cerr << "error: " << message << "\n";
	return 2;
}

// the quadratic problem has inhomogeneous boundary data incompatible with the
// nonconforming vertex dofs under elimination; it is registered penalty-only
bool flags_consistent(const ncfem::StudyConfig& config, std::string& message) {
	if (config.problem == ncfem::ProblemKind::quad && config.bc == ncfem::BcMode::eliminate) {
		message = "problem 'quad' requires --bc penalty";
		return false;
	}
	return true;
}

int run_study_command(const ncfem::StudyConfig& config, const std::string& out_path) {
	std::string message;
	if (!flags_consistent(config, message)) return invalid(message);
	ncfem::StudyReport report = ncfem::run_study(config);
	ncfem::emit_csv(report.rows, std::cout);
	if (!out_path.empty()) {
		std::ofstream out(out_path, std::ios::binary);
		if (!out) return invalid("cannot open output file '" + out_path + "'");
		ncfem::emit_csv(report.rows, out);
	}
	if (report.solver_failed) {
		std::cerr << "solver failure: " << report.failure_message << "\n";
		return 1;
	}
	return 0;
}

int run_solve_command(const ncfem::StudyConfig& config, int n, const std::string& solution_path,
                      const std::string& matrix_path) {
	std::string message;
	if (!flags_consistent(config, message)) return invalid(message);
	ncfem::SolveResult result;
	try {
		result = ncfem::solve_single(config, n);
	} catch (const ncfem::SolverFailure& failure) {
		std::cerr << "solver failure: " << failure.what() << "\n";
		return 1;
	}
	std::cout << "n " << n << "\n"
	          << "ndofs " << result.dofmap.n_dofs << "\n"
	          << "cg_iters " << result.cg_iters << "\n"
	          << "l2_error " << ncfem::format_double(result.l2_error) << "\n"
	          << "h1_error " << ncfem::format_double(result.h1_error) << "\n";
	if (!solution_path.empty()) {
		std::ofstream out(solution_path, std::ios::binary);
		if (!out) return invalid("cannot open output file '" + solution_path + "'");
		ncfem::export_function_text(result.solution, out);
	}
	if (!matrix_path.empty()) {
		std::ofstream out(matrix_path, std::ios::binary);
		if (!out) return invalid("cannot open output file '" + matrix_path + "'");
		ncfem::export_matrix_market(result.system.matrix, out);
	}
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Convergence studies for a nonconforming P1 element with quadratic "
	             "vertex enrichment on the unit square"};
	app.require_subcommand(1);

	ncfem::StudyConfig config;
	std::string out_path;
	int solve_n = 8;
	std::string solution_path, matrix_path;

	auto add_common = [&](CLI::App* cmd) {
		cmd->add_option("--problem", config.problem, "Problem: sine, patch, quad")
		    ->transform(CLI::CheckedTransformer(problem_names, CLI::ignore_case));
		cmd->add_option("--element", config.element, "Element: nc1c2, cr, p2")
		    ->transform(CLI::CheckedTransformer(element_names, CLI::ignore_case));
		cmd->add_option("--bc", config.bc, "Boundary treatment: eliminate, penalty")
		    ->transform(CLI::CheckedTransformer(bc_names, CLI::ignore_case));
		cmd->add_option("--penalty-eps", config.penalty_eps, "Penalty parameter")
		    ->check(CLI::PositiveNumber);
		cmd->add_option("--quad-degree", config.quad_degree, "Load quadrature degree")
		    ->check(CLI::Range(2, 6));
		cmd->add_option("--tol", config.tol, "CG relative tolerance")->check(CLI::PositiveNumber);
		cmd->add_flag("--deterministic", config.deterministic, "Deterministic sequential mode");
	};

	CLI::App* study = app.add_subcommand("study", "Run a mesh-refinement convergence study");
	add_common(study);
	study->add_option("--n0", config.n0, "Coarsest mesh parameter")->check(CLI::Range(2, 1 << 20));
	study->add_option("--levels", config.levels, "Number of refinement levels")
	    ->check(CLI::Range(2, 30));
	study->add_option("--out", out_path, "CSV output path");

	CLI::App* solve = app.add_subcommand("solve", "Solve on a single mesh");
	add_common(solve);
	solve->add_option("--n", solve_n, "Mesh parameter")->check(CLI::Range(1, 1 << 20));
	solve->add_option("--dump-solution", solution_path, "Write dof/value pairs to a text file");
	solve->add_option("--dump-matrix", matrix_path, "Write the system matrix in Matrix Market format");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		if (e.get_exit_code() == 0) return app.exit(e); // --help
		app.exit(e);
		return 2;
	}

	try {
		if (study->parsed()) return run_study_command(config, out_path);
		return run_solve_command(config, solve_n, solution_path, matrix_path);
	} catch (const std::exception& e) {
		return invalid(e.what());
	}
}
