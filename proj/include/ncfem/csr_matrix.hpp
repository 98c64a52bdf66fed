#pragma once

#include <iosfwd>
#include <vector>

namespace ncfem {

struct Triplet {
	int row;
	int col;
	double value;
};

// Compressed sparse row, assembled from duplicate-accumulating triplets.
class CsrMatrix {
public:
	CsrMatrix() = default;
	CsrMatrix(int dimension, const std::vector<Triplet>& triplets);

	int dimension() const { return static_cast<int>(row_ptr_.size()) - 1; }
	int n_nonzeros() const { return static_cast<int>(values_.size()); }

	void mul_vec(const std::vector<double>& x, std::vector<double>& y) const;
	std::vector<double> diagonal() const;
	double value(int i, int j) const; // 0.0 if not stored

	// max |A(i,j) - A(j,i)|; 0.0 for exactly symmetric content
	double symmetry_defect() const;

	std::vector<Triplet> to_triplets() const;

	const std::vector<int>& row_ptr() const { return row_ptr_; }
	const std::vector<int>& cols() const { return cols_; }
	const std::vector<double>& values() const { return values_; }

private:
	std::vector<int> row_ptr_{0};
	std::vector<int> cols_;
	std::vector<double> values_;
};

// Matrix Market coordinate format, symmetric (lower triangle), 1-based.
void export_matrix_market(const CsrMatrix& m, std::ostream& out);

} // namespace ncfem
