#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nzeta {

// Dense row-major integer matrix. Small sizes only (group ranks).
class IntMatrix
{
  public:
	IntMatrix() = default;
	IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
	IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data);

	static IntMatrix identity(std::size_t n);

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }

	std::int64_t &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
	std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

	std::vector<std::int64_t> apply(std::span<const std::int64_t> v) const;

	friend IntMatrix operator*(IntMatrix const &a, IntMatrix const &b);
	friend IntMatrix operator-(IntMatrix const &a, IntMatrix const &b);
	friend bool operator==(IntMatrix const &, IntMatrix const &) = default;

	std::string str() const;

  private:
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<std::int64_t> data_;
};

// U * A * V = D with U, V unimodular, D diagonal with nonnegative entries
// d_0 | d_1 | ... and d_i = 0 exactly for i >= rank.
struct SmithForm
{
	IntMatrix U, U_inv, V, V_inv;
	std::vector<std::int64_t> diagonal; // length min(rows, cols)
	std::size_t rank = 0;
};

SmithForm smith_normal_form(IntMatrix const &a);

} // namespace nzeta
