#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nzeta {

// Rectangular row-major container. Arithmetic lives with the entry types.
template <class T> class Matrix
{
  public:
	Matrix() = default;
	Matrix(std::size_t rows, std::size_t cols, T const &fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }
	bool square() const { return rows_ == cols_; }

	T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
	T const &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

	auto begin() const { return data_.begin(); }
	auto end() const { return data_.end(); }
	auto begin() { return data_.begin(); }
	auto end() { return data_.end(); }

	template <class F> auto map(F &&f) const
	{
		using U = decltype(f(std::declval<T const &>()));
		Matrix<U> r;
		r.rows_ = rows_;
		r.cols_ = cols_;
		r.data_.reserve(data_.size());
		for (auto const &x : data_)
			r.data_.push_back(f(x));
		return r;
	}

	friend bool operator==(Matrix const &, Matrix const &) = default;

  private:
	template <class> friend class Matrix;
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<T> data_;
};

} // namespace nzeta
