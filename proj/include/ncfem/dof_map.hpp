#pragma once

#include <iosfwd>
#include <vector>

#include "ncfem/mesh.hpp"
#include "ncfem/reference_element.hpp"

namespace ncfem {

enum class ElementKind { NC1C2, CR, P2C };

struct CellDof {
	int global;
	ReferenceBasis basis;
};

struct DofMap {
	ElementKind kind;
	int n_dofs;
	// per triangle, in order: 3 edge dofs (local edges 0,1,2), then for
	// NC1C2/P2C the 3 vertex dofs (local vertices 0,1,2). CR has 3 entries.
	std::vector<std::vector<CellDof>> cell_dofs;
	std::vector<int> boundary_dofs; // ascending
	std::vector<char> is_boundary;  // size n_dofs

	int n_edge_dofs; // edge dofs occupy global indices [0, n_edge_dofs)
};

// Global numbering: edge dofs first (edge index order), then vertex dofs
// (vertex index order) for kinds that have them.
DofMap build_dofmap(const Mesh& mesh, ElementKind kind);

struct DiscreteFunction {
	ElementKind kind;
	std::vector<double> coefficients;
};

// Value at reference point p of triangle k.
double evaluate(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                int k, Vec2 p);

// Trace of f from triangle k (a neighbor of edge e) at canonical parameter t.
double edge_trace(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                  int e, int k, double t);

// Trace difference across edge e at canonical arclength parameter t in [0,1]:
// trace(forward neighbor) - trace(backward neighbor), i.e. signed by the
// canonical normal (tangent.y, -tangent.x). Boundary edges: the single trace,
// signed the same way (flipped if the triangle traverses the edge backward).
double edge_jump(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                 int e, double t);

// Plain-text export: "dof value" per line.
void export_function_text(const DiscreteFunction& f, std::ostream& out);

} // namespace ncfem
