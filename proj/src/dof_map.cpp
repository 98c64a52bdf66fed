#include "ncfem/dof_map.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "ncfem/study.hpp" // format_double

namespace ncfem {

DofMap build_dofmap(const Mesh& mesh, ElementKind kind) {
	DofMap dm;
	dm.kind = kind;
	int ne = static_cast<int>(mesh.edges.size());
	int nv = static_cast<int>(mesh.vertices.size());
	bool has_vertex_dofs = kind != ElementKind::CR;
	dm.n_edge_dofs = ne;
	dm.n_dofs = has_vertex_dofs ? ne + nv : ne;

	BasisKind edge_basis = kind == ElementKind::P2C ? BasisKind::p2_midpoint : BasisKind::cr_midpoint;
	dm.cell_dofs.resize(mesh.triangles.size());
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		auto& cell = dm.cell_dofs[k];
		cell.reserve(has_vertex_dofs ? 6 : 3);
		for (int le = 0; le < 3; ++le)
			cell.push_back({mesh.triangle_edges[k][le], {edge_basis, le + 1}});
		if (has_vertex_dofs)
			for (int lv = 0; lv < 3; ++lv)
				cell.push_back({ne + mesh.triangles[k][lv], {BasisKind::quadratic_vertex, lv + 1}});
	}

	dm.is_boundary.assign(dm.n_dofs, 0);
	for (int e = 0; e < ne; ++e)
		if (mesh.edges[e].boundary) dm.is_boundary[e] = 1;
	if (has_vertex_dofs)
		for (int v = 0; v < nv; ++v)
			if (mesh.vertex_boundary[v]) dm.is_boundary[ne + v] = 1;
	for (int i = 0; i < dm.n_dofs; ++i)
		if (dm.is_boundary[i]) dm.boundary_dofs.push_back(i);
	return dm;
}

double evaluate(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                int k, Vec2 p) {
	double v = 0.0;
	for (const auto& cd : dofmap.cell_dofs.at(k))
		v += f.coefficients[cd.global] * eval_basis(cd.basis, p);
	return v;
}

namespace {

// reference coordinates of the point at parameter s along local edge le
// (s measured from local vertex le toward local vertex le+1)
Vec2 local_edge_point(int le, double s) {
	const Vec2 ref[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
	Vec2 a = ref[le], b = ref[(le + 1) % 3];
	return {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
}

int local_edge_of(const Mesh& mesh, int k, int e) {
	for (int le = 0; le < 3; ++le)
		if (mesh.triangle_edges[k][le] == e) return le;
	throw std::logic_error("edge not on triangle");
}

} // namespace

// trace of f from triangle k at canonical parameter t of edge e
double edge_trace(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                  int e, int k, double t) {
	int le = local_edge_of(mesh, k, e);
	double s = mesh.triangle_edge_signs[k][le] > 0 ? t : 1.0 - t;
	return evaluate(mesh, dofmap, f, k, local_edge_point(le, s));
}

double edge_jump(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                 int e, double t) {
	const Edge& edge = mesh.edges.at(e);
	if (edge.boundary) {
		int k = edge.neighbors[0] != -1 ? edge.neighbors[0] : edge.neighbors[1];
		double sign = edge.neighbors[0] != -1 ? 1.0 : -1.0;
		return sign * edge_trace(mesh, dofmap, f, e, k, t);
	}
	return edge_trace(mesh, dofmap, f, e, edge.neighbors[0], t) -
	       edge_trace(mesh, dofmap, f, e, edge.neighbors[1], t);
}

void export_function_text(const DiscreteFunction& f, std::ostream& out) {
	for (size_t i = 0; i < f.coefficients.size(); ++i)
		out << i << ' ' << format_double(f.coefficients[i]) << '\n';
}

} // namespace ncfem
