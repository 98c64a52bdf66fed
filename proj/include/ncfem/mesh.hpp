#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "ncfem/geometry.hpp"

namespace ncfem {

struct Edge {
	std::array<int, 2> endpoints;  // canonical: endpoints[0] < endpoints[1]
	Vec2 midpoint;
	double length;
	bool boundary;
	// neighbors[0] = triangle traversing endpoints[0]->endpoints[1] in its CCW
	// boundary walk (if any), neighbors[1] = the reverse traverser; -1 if absent.
	// Interior edges have both; boundary edges exactly one (either slot).
	std::array<int, 2> neighbors;
};

struct AffineMap {
	Vec2 origin;            // image of (0,0)
	Mat2 jacobian;          // columns: v1-v0, v2-v0
	double det;             // 2 * triangle area
	Mat2 inverse_transpose; // gradient transform
};

struct Mesh {
	std::vector<Vec2> vertices;
	std::vector<std::array<int, 3>> triangles; // CCW vertex indices
	std::vector<Edge> edges;
	// per triangle: edge index of local edge i (joining local vertices i, i+1 mod 3)
	std::vector<std::array<int, 3>> triangle_edges;
	// +1 if the triangle traverses that edge in canonical direction, else -1
	std::vector<std::array<int, 3>> triangle_edge_signs;
	std::vector<char> vertex_boundary; // 1 if the vertex lies on a boundary edge
	double h_max = 0.0;

	int n_interior_edges() const;
};

// Uniform n x n grid of the unit square, each cell split by the
// lower-left -> upper-right diagonal. Throws on n < 1.
Mesh generate_structured(int n);

// Populates edges/triangle_edges/h_max from vertices+triangles.
// Throws on nonconforming input (an edge shared by >2 triangles).
void build_edges(Mesh& mesh);

AffineMap affine_map(const Mesh& mesh, int k); // throws on degenerate triangle

// Plain-text export: "v x y" per vertex, "t i j k" per triangle.
void export_mesh_text(const Mesh& mesh, std::ostream& out);

} // namespace ncfem
