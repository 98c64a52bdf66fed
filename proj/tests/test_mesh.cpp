#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ncfem/mesh.hpp"

using Catch::Approx;
using namespace ncfem;

TEST_CASE("structured mesh entity counts", "[mesh]") {
	struct Row {
		int n, vertices, triangles, edges;
	};
	// (n+1)^2 vertices, 2n^2 triangles, 3n^2+2n edges
	const Row rows[] = {{1, 4, 2, 5}, {2, 9, 8, 16}, {3, 16, 18, 33}, {4, 25, 32, 56}};
	for (const Row& r : rows) {
		Mesh mesh = generate_structured(r.n);
		CHECK(static_cast<int>(mesh.vertices.size()) == r.vertices);
		CHECK(static_cast<int>(mesh.triangles.size()) == r.triangles);
		CHECK(static_cast<int>(mesh.edges.size()) == r.edges);
		// Euler characteristic of a disk: V - E + T = 1
		CHECK(r.vertices - r.edges + r.triangles == 1);
		int boundary = 0;
		for (const Edge& e : mesh.edges) boundary += e.boundary ? 1 : 0;
		CHECK(boundary == 4 * r.n);
		CHECK(mesh.n_interior_edges() == r.edges - 4 * r.n);
	}
	CHECK_THROWS_AS(generate_structured(0), std::invalid_argument);
}

TEST_CASE("vertex numbering is row-major bottom-up", "[mesh]") {
	Mesh mesh = generate_structured(2);
	CHECK(mesh.vertices[0].x == 0.0);
	CHECK(mesh.vertices[0].y == 0.0);
	CHECK(mesh.vertices[2].x == 1.0);
	CHECK(mesh.vertices[2].y == 0.0);
	CHECK(mesh.vertices[4].x == 0.5);
	CHECK(mesh.vertices[4].y == 0.5);
	CHECK(mesh.vertices[8].x == 1.0);
	CHECK(mesh.vertices[8].y == 1.0);
	// first cell: lower triangle then upper triangle
	CHECK(mesh.triangles[0][0] == 0);
	CHECK(mesh.triangles[0][1] == 1);
	CHECK(mesh.triangles[0][2] == 4);
	CHECK(mesh.triangles[1][0] == 0);
	CHECK(mesh.triangles[1][1] == 4);
	CHECK(mesh.triangles[1][2] == 3);
}

TEST_CASE("triangles are counterclockwise with equal areas", "[mesh]") {
	Mesh mesh = generate_structured(3);
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		CHECK(map.det == Approx(1.0 / 9.0)); // det = 2*area = 1/n^2
	}
	CHECK(mesh.h_max == Approx(std::sqrt(2.0) / 3.0));
	CHECK(generate_structured(1).h_max == Approx(std::sqrt(2.0)));
}

TEST_CASE("edge topology invariants", "[mesh]") {
	Mesh mesh = generate_structured(3);
	for (const Edge& e : mesh.edges) {
		CHECK(e.endpoints[0] < e.endpoints[1]);
		Vec2 a = mesh.vertices[e.endpoints[0]];
		Vec2 b = mesh.vertices[e.endpoints[1]];
		CHECK(e.midpoint.x == 0.5 * (a.x + b.x));
		CHECK(e.midpoint.y == 0.5 * (a.y + b.y));
		CHECK(e.length == Approx(norm(b - a)));
		if (e.boundary) {
			CHECK(((e.neighbors[0] == -1) != (e.neighbors[1] == -1)));
		} else {
			CHECK(e.neighbors[0] >= 0);
			CHECK(e.neighbors[1] >= 0);
			CHECK(e.neighbors[0] != e.neighbors[1]);
		}
		// neighbors[0] walks endpoints[0] -> endpoints[1] in its CCW boundary
		for (int side = 0; side < 2; ++side) {
			int k = e.neighbors[side];
			if (k < 0) continue;
			bool found = false;
			for (int i = 0; i < 3; ++i) {
				int va = mesh.triangles[k][i];
				int vb = mesh.triangles[k][(i + 1) % 3];
				if (side == 0 && va == e.endpoints[0] && vb == e.endpoints[1]) found = true;
				if (side == 1 && va == e.endpoints[1] && vb == e.endpoints[0]) found = true;
			}
			CHECK(found);
		}
	}
	// triangle_edges round trip, with signs matching traversal direction
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		for (int i = 0; i < 3; ++i) {
			int e = mesh.triangle_edges[k][i];
			int va = mesh.triangles[k][i];
			int vb = mesh.triangles[k][(i + 1) % 3];
			const Edge& edge = mesh.edges[e];
			CHECK(std::min(va, vb) == edge.endpoints[0]);
			CHECK(std::max(va, vb) == edge.endpoints[1]);
			int sign = mesh.triangle_edge_signs[k][i];
			CHECK(sign == (va == edge.endpoints[0] ? 1 : -1));
			CHECK(edge.neighbors[sign > 0 ? 0 : 1] == static_cast<int>(k));
		}
	}
}

TEST_CASE("boundary vertices flagged", "[mesh]") {
	Mesh mesh = generate_structured(2);
	int flagged = 0;
	for (char b : mesh.vertex_boundary) flagged += b ? 1 : 0;
	CHECK(flagged == 8);           // all but the center of the 3x3 grid
	CHECK(!mesh.vertex_boundary[4]);
}

TEST_CASE("affine map of the first triangle", "[mesh]") {
	Mesh mesh = generate_structured(1); // triangle 0: (0,0),(1,0),(1,1)
	AffineMap map = affine_map(mesh, 0);
	CHECK(map.origin.x == 0.0);
	CHECK(map.origin.y == 0.0);
	CHECK(map.jacobian.a00 == 1.0); // columns v1-v0, v2-v0
	CHECK(map.jacobian.a10 == 0.0);
	CHECK(map.jacobian.a01 == 1.0);
	CHECK(map.jacobian.a11 == 1.0);
	CHECK(map.det == 1.0);
	Vec2 img = map.origin + map.jacobian.apply({0.0, 1.0});
	CHECK(img.x == 1.0);
	CHECK(img.y == 1.0);
	Vec2 g = map.inverse_transpose.apply({1.0, 0.0}); // J^{-T} = [[1,0],[-1,1]]
	CHECK(g.x == 1.0);
	CHECK(g.y == -1.0);
}

TEST_CASE("affine map sends the reference centroid to the centroid", "[mesh]") {
	Mesh mesh = generate_structured(2);
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		AffineMap map = affine_map(mesh, static_cast<int>(k));
		Vec2 c = map.origin + map.jacobian.apply({1.0 / 3.0, 1.0 / 3.0});
		Vec2 ref{0.0, 0.0};
		for (int i = 0; i < 3; ++i) ref = ref + (1.0 / 3.0) * mesh.vertices[mesh.triangles[k][i]];
		CHECK(c.x == Approx(ref.x));
		CHECK(c.y == Approx(ref.y));
	}
}

TEST_CASE("malformed meshes are rejected", "[mesh]") {
	Mesh cw;
	cw.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
	cw.triangles = {{0, 2, 1}}; // clockwise
	CHECK_THROWS_AS(build_edges(cw), std::invalid_argument);

	Mesh nonconforming;
	nonconforming.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.5, 1.5}};
	nonconforming.triangles = {{0, 1, 2}, {1, 3, 2}, {1, 3, 2}}; // duplicated triangle
	CHECK_THROWS_AS(build_edges(nonconforming), std::invalid_argument);

	Mesh degenerate;
	degenerate.vertices = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
	degenerate.triangles = {{0, 1, 2}}; // collinear
	CHECK_THROWS_AS(build_edges(degenerate), std::invalid_argument);
}

TEST_CASE("mesh text export", "[mesh]") {
	Mesh mesh = generate_structured(1);
	std::ostringstream out;
	export_mesh_text(mesh, out);
	std::istringstream in(out.str());
	std::string line;
	std::getline(in, line);
	CHECK(line == "v 0 0");
	std::getline(in, line);
	CHECK(line == "v 1 0");
	std::getline(in, line);
	std::getline(in, line);
	std::getline(in, line);
	CHECK(line == "t 0 1 3");
	std::getline(in, line);
	CHECK(line == "t 0 3 2");
	CHECK(!std::getline(in, line));
}
