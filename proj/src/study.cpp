#include "ncfem/study.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ncfem {

Problem make_problem(ProblemKind kind) {
	const double pi = 3.14159265358979323846;
	switch (kind) {
	case ProblemKind::sine:
		return {kind,
		        [pi](double x, double y) { return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y); },
		        [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); },
		        [pi](double x, double y) {
			        return Vec2{pi * std::cos(pi * x) * std::sin(pi * y),
			                    pi * std::sin(pi * x) * std::cos(pi * y)};
		        },
		        true};
	case ProblemKind::patch:
		return {kind, [](double, double) { return 0.0; },
		        [](double x, double y) { return 1.0 + 2.0 * x + 3.0 * y; },
		        [](double, double) { return Vec2{2.0, 3.0}; }, false};
	case ProblemKind::quad:
		return {kind, [](double, double) { return -4.0; },
		        [](double x, double y) { return x * x + y * y; },
		        [](double x, double y) { return Vec2{2.0 * x, 2.0 * y}; }, false};
	}
	throw std::logic_error("unknown problem kind");
}

double eoc(double error_coarse, double error_fine) {
	return std::log2(error_coarse / error_fine);
}

SolveResult solve_single(const StudyConfig& config, int n) {
	Problem problem = make_problem(config.problem);
	SolveResult res;
	res.mesh = generate_structured(n);
	res.dofmap = build_dofmap(res.mesh, config.element);
	res.system.matrix = assemble_stiffness(res.mesh, res.dofmap);
	res.system.rhs = assemble_load(res.mesh, res.dofmap, problem.f, config.quad_degree);
	res.system.bc_mode = config.bc;
	res.system.penalty_eps = config.penalty_eps;
	std::vector<std::pair<int, double>> bc_values =
	    dirichlet_values(res.mesh, res.dofmap, problem.u);
	apply_dirichlet(res.system, bc_values);
	CgResult cg = cg_solve(res.system, config.tol, 10 * res.system.matrix.dimension());
	res.cg_iters = cg.iterations;
	res.solution.kind = config.element;
	res.solution.coefficients = std::move(cg.x);
	res.l2_error = l2_error(res.mesh, res.dofmap, res.solution, problem.u, 6);
	res.h1_error = h1_broken_error(res.mesh, res.dofmap, res.solution, problem.grad_u, 6);
	return res;
}

StudyReport run_study(const StudyConfig& config) {
	if (config.n0 < 2) throw std::invalid_argument("n0 must be >= 2");
	if (config.levels < 2) throw std::invalid_argument("levels must be >= 2");
	StudyReport report;
	for (int level = 0; level < config.levels; ++level) {
		int n = config.n0 << level;
		auto t0 = std::chrono::steady_clock::now();
		SolveResult sr;
		try {
			sr = solve_single(config, n);
		} catch (const SolverFailure& failure) {
			report.solver_failed = true;
			report.failure_message = failure.what();
			return report;
		}
		auto t1 = std::chrono::steady_clock::now();
		StudyRow row;
		row.level = level;
		row.n = n;
		row.h = sr.mesh.h_max;
		row.ndofs = sr.dofmap.n_dofs;
		row.l2_error = sr.l2_error;
		row.h1_error = sr.h1_error;
		if (!report.rows.empty()) {
			row.l2_eoc = eoc(report.rows.back().l2_error, row.l2_error);
			row.h1_eoc = eoc(report.rows.back().h1_error, row.h1_error);
		}
		row.cg_iters = sr.cg_iters;
		row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
		report.rows.push_back(row);
	}
	return report;
}

std::string format_double(double v) {
	char buf[64];
	auto res = std::to_chars(buf, buf + sizeof(buf), v);
	return std::string(buf, res.ptr);
}

void emit_csv(const std::vector<StudyRow>& rows, std::ostream& out) {
	out << "level,n,h,ndofs,l2_error,h1_error,l2_eoc,h1_eoc,cg_iters,wall_time_s\n";
	for (const auto& r : rows) {
		out << r.level << ',' << r.n << ',' << format_double(r.h) << ',' << r.ndofs << ','
		    << format_double(r.l2_error) << ',' << format_double(r.h1_error) << ',';
		if (r.l2_eoc) out << format_double(*r.l2_eoc);
		out << ',';
		if (r.h1_eoc) out << format_double(*r.h1_eoc);
		out << ',' << r.cg_iters << ',' << format_double(r.wall_time_s) << '\n';
	}
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
	std::vector<std::string> fields;
	std::string cur;
	for (char c : line) {
		if (c == ',') {
			fields.push_back(cur);
			cur.clear();
		} else {
			cur += c;
		}
	}
	fields.push_back(cur);
	return fields;
}

double parse_field_double(const std::string& s) {
	double v = 0.0;
	auto res = std::from_chars(s.data(), s.data() + s.size(), v);
	if (res.ec != std::errc() || res.ptr != s.data() + s.size())
		throw std::runtime_error("csv: bad numeric field '" + s + "'");
	return v;
}

} // namespace

std::vector<StudyRow> parse_csv(std::istream& in) {
	std::string line;
	if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
	if (!line.empty() && line.back() == '\r') line.pop_back();
	if (line != "level,n,h,ndofs,l2_error,h1_error,l2_eoc,h1_eoc,cg_iters,wall_time_s")
		throw std::runtime_error("csv: unexpected header '" + line + "'");
	std::vector<StudyRow> rows;
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r') line.pop_back();
		if (line.empty()) continue;
		auto f = split_csv_line(line);
		if (f.size() != 10) throw std::runtime_error("csv: expected 10 fields, got line '" + line + "'");
		StudyRow r;
		r.level = std::stoi(f[0]);
		r.n = std::stoi(f[1]);
		r.h = parse_field_double(f[2]);
		r.ndofs = std::stoi(f[3]);
		r.l2_error = parse_field_double(f[4]);
		r.h1_error = parse_field_double(f[5]);
		if (!f[6].empty()) r.l2_eoc = parse_field_double(f[6]);
		if (!f[7].empty()) r.h1_eoc = parse_field_double(f[7]);
		r.cg_iters = std::stoi(f[8]);
		r.wall_time_s = parse_field_double(f[9]);
		rows.push_back(r);
	}
	return rows;
}

} // namespace ncfem
