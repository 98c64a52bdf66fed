#pragma once

#include <vector>

#include "ncfem/assembly.hpp"
#include "ncfem/dof_map.hpp"
#include "ncfem/mesh.hpp"

namespace ncfem {

struct InterpolationResult {
	DiscreteFunction function; // NC1C2 coefficients
	// max over shared vertices of |correction(owner) - correction(other element)|;
	// the global vertex coefficient comes from the owner element (lowest triangle
	// index containing the vertex). Zero for affine u, Theta(h^2) for curved u.
	double max_vertex_discrepancy;
};

// Two-step interpolation: edge dof = u(edge midpoint); vertex dof = vertex value
// minus the midpoint interpolant of the owner element at that vertex.
InterpolationResult interpolate(const Mesh& mesh, const DofMap& dofmap, const ScalarField& u);

struct ErrorPair {
	double l2;
	double h1;
};

// Per-element interpolation error: on each element the full six-coefficient
// local interpolant (element's own vertex corrections) is compared against u.
ErrorPair local_interpolation_error(const Mesh& mesh, const ScalarField& u,
                                    const VectorField& grad_u, int quad_degree);

double l2_error(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                const ScalarField& u, int quad_degree);
double h1_broken_error(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                       const VectorField& grad_u, int quad_degree);

// Broken H1 seminorm sqrt(sum_K int_K |grad f|^2), degree-2 quadrature (exact).
double h1_broken_seminorm(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f);

struct ErrorReport {
	double l2;
	double h1_broken;
	double max_edge_jump_integral;
};

ErrorReport error_report(const Mesh& mesh, const DofMap& dofmap, const DiscreteFunction& f,
                         const ScalarField& u, const VectorField& grad_u, int quad_degree);

struct EdgeJumpReport {
	int edge;
	double jump_integral; // int_e [f] ds, 2-point Gauss (exact, affine jump)
	double jump_l2_sq;    // int_e [f]^2 ds, 4-point Gauss
	double lemma_ratio;   // |e| * jump_l2_sq / sum_{K in omega_e} h_K^2 |f|^2_{H1(K)}
};

// One report per interior edge, in edge-index order. Ratio guard: 0 when the
// denominator vanishes and the numerator is <= 1e-20.
std::vector<EdgeJumpReport> jump_diagnostics(const Mesh& mesh, const DofMap& dofmap,
                                             const DiscreteFunction& f);

// sum over all edges of int_e (grad u . n_e)[w] ds with 4-point Gauss
// (boundary edges use the outward-signed trace); returns max over the test
// set of |gap| / ||w||_h. Test functions should carry zero boundary dofs.
double consistency_gap(const Mesh& mesh, const DofMap& dofmap, const VectorField& grad_u,
                       const std::vector<DiscreteFunction>& test_set);

// The raw edge-route sum for one test function (used by the identity tests).
double consistency_gap_raw(const Mesh& mesh, const DofMap& dofmap, const VectorField& grad_u,
                           const DiscreteFunction& w);

} // namespace ncfem
