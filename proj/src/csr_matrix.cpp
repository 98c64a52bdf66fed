#include "ncfem/csr_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ncfem/study.hpp" // format_double

namespace ncfem {

CsrMatrix::CsrMatrix(int dimension, const std::vector<Triplet>& triplets) {
	std::vector<Triplet> t = triplets;
	// stable: duplicates accumulate in insertion order, so symmetric inputs
	// produce bit-identical (i,j)/(j,i) sums
	std::stable_sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
		return a.row != b.row ? a.row < b.row : a.col < b.col;
	});
	row_ptr_.assign(dimension + 1, 0);
	for (size_t i = 0; i < t.size();) {
		size_t j = i;
		double sum = 0.0;
		while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col)
			sum += t[j++].value;
		if (t[i].row < 0 || t[i].row >= dimension || t[i].col < 0 || t[i].col >= dimension)
			throw std::invalid_argument("triplet index out of range");
		cols_.push_back(t[i].col);
		values_.push_back(sum);
		++row_ptr_[t[i].row + 1];
		i = j;
	}
	for (int r = 0; r < dimension; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

void CsrMatrix::mul_vec(const std::vector<double>& x, std::vector<double>& y) const {
	int n = dimension();
	y.assign(n, 0.0);
	for (int i = 0; i < n; ++i) {
		double s = 0.0;
		for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
			s += values_[p] * x[cols_[p]];
		y[i] = s;
	}
}

std::vector<double> CsrMatrix::diagonal() const {
	int n = dimension();
	std::vector<double> d(n, 0.0);
	for (int i = 0; i < n; ++i)
		for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
			if (cols_[p] == i) d[i] = values_[p];
	return d;
}

double CsrMatrix::value(int i, int j) const {
	for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
		if (cols_[p] == j) return values_[p];
	return 0.0;
}

double CsrMatrix::symmetry_defect() const {
	double worst = 0.0;
	int n = dimension();
	for (int i = 0; i < n; ++i)
		for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
			worst = std::max(worst, std::abs(values_[p] - value(cols_[p], i)));
	return worst;
}

std::vector<Triplet> CsrMatrix::to_triplets() const {
	std::vector<Triplet> t;
	t.reserve(values_.size());
	int n = dimension();
	for (int i = 0; i < n; ++i)
		for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
			t.push_back({i, cols_[p], values_[p]});
	return t;
}

void export_matrix_market(const CsrMatrix& m, std::ostream& out) {
	out << "%%MatrixMarket matrix coordinate real symmetric\n";
	std::vector<Triplet> lower;
	for (const auto& t : m.to_triplets())
		if (t.col <= t.row) lower.push_back(t);
	out << m.dimension() << ' ' << m.dimension() << ' ' << lower.size() << '\n';
	for (const auto& t : lower)
		out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value) << '\n';
}

} // namespace ncfem
