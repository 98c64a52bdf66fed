#include "ncfem/mesh.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "ncfem/study.hpp" // format_double

namespace ncfem {

int Mesh::n_interior_edges() const {
	int c = 0;
	for (const auto& e : edges)
		if (!e.boundary) ++c;
	return c;
}

Mesh generate_structured(int n) {
	if (n < 1) throw std::invalid_argument("generate_structured requires n >= 1");
	Mesh mesh;
	double h = 1.0 / n;
	mesh.vertices.reserve((n + 1) * (n + 1));
	for (int j = 0; j <= n; ++j)
		for (int i = 0; i <= n; ++i)
			mesh.vertices.push_back({i * h, j * h});
	auto vid = [n](int i, int j) { return j * (n + 1) + i; };
	mesh.triangles.reserve(2 * n * n);
	for (int j = 0; j < n; ++j) {
		for (int i = 0; i < n; ++i) {
			int ll = vid(i, j), lr = vid(i + 1, j);
			int ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
			mesh.triangles.push_back({ll, lr, ur}); // lower
			mesh.triangles.push_back({ll, ur, ul}); // upper
		}
	}
	build_edges(mesh);
	return mesh;
}

void build_edges(Mesh& mesh) {
	mesh.edges.clear();
	mesh.triangle_edges.assign(mesh.triangles.size(), {-1, -1, -1});
	mesh.triangle_edge_signs.assign(mesh.triangles.size(), {0, 0, 0});
	std::map<std::pair<int, int>, int> index;

	int nv = static_cast<int>(mesh.vertices.size());
	for (size_t k = 0; k < mesh.triangles.size(); ++k) {
		const auto& tri = mesh.triangles[k];
		// orientation check: positive signed area (CCW)
		Vec2 a = mesh.vertices.at(tri[0]);
		Vec2 b = mesh.vertices.at(tri[1]);
		Vec2 c = mesh.vertices.at(tri[2]);
		double area2 = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
		if (area2 <= 0.0) throw std::invalid_argument("triangle not counterclockwise");
		for (int le = 0; le < 3; ++le) {
			int va = tri[le], vb = tri[(le + 1) % 3];
			if (va < 0 || vb < 0 || va >= nv || vb >= nv)
				throw std::invalid_argument("triangle references invalid vertex");
			bool forward = va < vb;
			auto key = std::minmax(va, vb);
			auto [it, fresh] = index.try_emplace(key, static_cast<int>(mesh.edges.size()));
			if (fresh) {
				Edge e;
				e.endpoints = {key.first, key.second};
				Vec2 p = mesh.vertices[key.first], q = mesh.vertices[key.second];
				e.midpoint = {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
				e.length = norm(q - p);
				e.boundary = true; // until a second neighbor shows up
				e.neighbors = {-1, -1};
				mesh.edges.push_back(e);
			}
			Edge& e = mesh.edges[it->second];
			int slot = forward ? 0 : 1;
			if (e.neighbors[slot] != -1)
				throw std::invalid_argument("nonconforming mesh: edge with more than 2 neighbors");
			e.neighbors[slot] = static_cast<int>(k);
			e.boundary = (e.neighbors[0] == -1) || (e.neighbors[1] == -1);
			mesh.triangle_edges[k][le] = it->second;
			mesh.triangle_edge_signs[k][le] = forward ? 1 : -1;
		}
	}

	mesh.vertex_boundary.assign(mesh.vertices.size(), 0);
	for (const auto& e : mesh.edges) {
		if (e.boundary) {
			mesh.vertex_boundary[e.endpoints[0]] = 1;
			mesh.vertex_boundary[e.endpoints[1]] = 1;
		}
	}

	mesh.h_max = 0.0;
	for (size_t k = 0; k < mesh.triangles.size(); ++k)
		for (int le = 0; le < 3; ++le)
			mesh.h_max = std::max(mesh.h_max, mesh.edges[mesh.triangle_edges[k][le]].length);
}

AffineMap affine_map(const Mesh& mesh, int k) {
	const auto& tri = mesh.triangles.at(k);
	Vec2 v0 = mesh.vertices[tri[0]];
	Vec2 v1 = mesh.vertices[tri[1]];
	Vec2 v2 = mesh.vertices[tri[2]];
	AffineMap m;
	m.origin = v0;
	m.jacobian = {v1.x - v0.x, v2.x - v0.x, v1.y - v0.y, v2.y - v0.y};
	m.det = m.jacobian.det();
	if (m.det <= 0.0) throw std::invalid_argument("degenerate or flipped triangle");
	m.inverse_transpose = m.jacobian.inverse().transpose();
	return m;
}

void export_mesh_text(const Mesh& mesh, std::ostream& out) {
	for (const auto& v : mesh.vertices)
		out << "v " << format_double(v.x) << ' ' << format_double(v.y) << '\n';
	for (const auto& t : mesh.triangles)
		out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

} // namespace ncfem
