#include "nzeta/smith.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace nzeta {

namespace {

std::int64_t mul_add(std::int64_t acc, std::int64_t a, std::int64_t b)
{
	std::int64_t p, r;
	if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc, p, &r))
		throw std::overflow_error("integer matrix overflow");
	return r;
}

// Row/column operations applied to the working matrix together with the
// bookkeeping for U, U^-1 (rows) and V, V^-1 (columns).
struct Reducer
{
	IntMatrix a, u, u_inv, v, v_inv;

	explicit Reducer(IntMatrix const &m)
	    : a(m), u(IntMatrix::identity(m.rows())), u_inv(IntMatrix::identity(m.rows())),
	      v(IntMatrix::identity(m.cols())), v_inv(IntMatrix::identity(m.cols()))
	{
	}

	// row_i += c * row_j
	void add_row(std::size_t i, std::size_t j, std::int64_t c)
	{
		for (std::size_t k = 0; k < a.cols(); ++k)
			a(i, k) = mul_add(a(i, k), c, a(j, k));
		for (std::size_t k = 0; k < u.cols(); ++k)
			u(i, k) = mul_add(u(i, k), c, u(j, k));
		for (std::size_t k = 0; k < u_inv.rows(); ++k)
			u_inv(k, j) = mul_add(u_inv(k, j), -c, u_inv(k, i));
	}

	void swap_rows(std::size_t i, std::size_t j)
	{
		if (i == j)
			return;
		for (std::size_t k = 0; k < a.cols(); ++k)
			std::swap(a(i, k), a(j, k));
		for (std::size_t k = 0; k < u.cols(); ++k)
			std::swap(u(i, k), u(j, k));
		for (std::size_t k = 0; k < u_inv.rows(); ++k)
			std::swap(u_inv(k, i), u_inv(k, j));
	}

	void negate_row(std::size_t i)
	{
		for (std::size_t k = 0; k < a.cols(); ++k)
			a(i, k) = -a(i, k);
		for (std::size_t k = 0; k < u.cols(); ++k)
			u(i, k) = -u(i, k);
		for (std::size_t k = 0; k < u_inv.rows(); ++k)
			u_inv(k, i) = -u_inv(k, i);
	}

	// col_j += c * col_i
	void add_col(std::size_t j, std::size_t i, std::int64_t c)
	{
		for (std::size_t k = 0; k < a.rows(); ++k)
			a(k, j) = mul_add(a(k, j), c, a(k, i));
		for (std::size_t k = 0; k < v.rows(); ++k)
			v(k, j) = mul_add(v(k, j), c, v(k, i));
		for (std::size_t k = 0; k < v_inv.cols(); ++k)
			v_inv(i, k) = mul_add(v_inv(i, k), -c, v_inv(j, k));
	}

	void swap_cols(std::size_t i, std::size_t j)
	{
		if (i == j)
			return;
		for (std::size_t k = 0; k < a.rows(); ++k)
			std::swap(a(k, i), a(k, j));
		for (std::size_t k = 0; k < v.rows(); ++k)
			std::swap(v(k, i), v(k, j));
		for (std::size_t k = 0; k < v_inv.cols(); ++k)
			std::swap(v_inv(i, k), v_inv(j, k));
	}
};

} // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data))
{
	if (data_.size() != rows * cols)
		throw std::invalid_argument("IntMatrix: data size does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n)
{
	IntMatrix m(n, n);
	for (std::size_t i = 0; i < n; ++i)
		m(i, i) = 1;
	return m;
}

std::vector<std::int64_t> IntMatrix::apply(std::span<const std::int64_t> v) const
{
	if (v.size() != cols_)
		throw std::invalid_argument("IntMatrix::apply: length mismatch");
	std::vector<std::int64_t> r(rows_, 0);
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = 0; j < cols_; ++j)
			r[i] = mul_add(r[i], (*this)(i, j), v[j]);
	return r;
}

IntMatrix operator*(IntMatrix const &a, IntMatrix const &b)
{
	if (a.cols_ != b.rows_)
		throw std::invalid_argument("IntMatrix product: shape mismatch");
	IntMatrix r(a.rows_, b.cols_);
	for (std::size_t i = 0; i < a.rows_; ++i)
		for (std::size_t k = 0; k < a.cols_; ++k)
			for (std::size_t j = 0; j < b.cols_; ++j)
				r(i, j) = mul_add(r(i, j), a(i, k), b(k, j));
	return r;
}

IntMatrix operator-(IntMatrix const &a, IntMatrix const &b)
{
	if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
		throw std::invalid_argument("IntMatrix difference: shape mismatch");
	IntMatrix r = a;
	for (std::size_t i = 0; i < r.data_.size(); ++i)
		r.data_[i] = mul_add(a.data_[i], -1, b.data_[i]);
	return r;
}

std::string IntMatrix::str() const
{
	std::ostringstream os;
	os << '[';
	for (std::size_t i = 0; i < rows_; ++i)
	{
		os << (i ? ", [" : "[");
		for (std::size_t j = 0; j < cols_; ++j)
			os << (j ? ", " : "") << (*this)(i, j);
		os << ']';
	}
	os << ']';
	return os.str();
}

SmithForm smith_normal_form(IntMatrix const &m)
{
	Reducer r(m);
	auto &a = r.a;
	std::size_t const rows = a.rows(), cols = a.cols();
	std::size_t const n = std::min(rows, cols);
	std::size_t t = 0;
	for (; t < n; ++t)
	{
		for (;;)
		{
			// smallest nonzero entry of the trailing block becomes the pivot
			std::size_t pi = rows, pj = cols;
			for (std::size_t i = t; i < rows; ++i)
				for (std::size_t j = t; j < cols; ++j)
					if (a(i, j) != 0 && (pi == rows || std::llabs(a(i, j)) < std::llabs(a(pi, pj))))
					{
						pi = i;
						pj = j;
					}
			if (pi == rows)
				goto done;
			r.swap_rows(t, pi);
			r.swap_cols(t, pj);

			bool clean = true;
			for (std::size_t i = t + 1; i < rows; ++i)
				if (a(i, t) != 0)
				{
					r.add_row(i, t, -(a(i, t) / a(t, t)));
					clean = clean && a(i, t) == 0;
				}
			for (std::size_t j = t + 1; j < cols; ++j)
				if (a(t, j) != 0)
				{
					r.add_col(j, t, -(a(t, j) / a(t, t)));
					clean = clean && a(t, j) == 0;
				}
			if (!clean)
				continue;

			// divisibility: fold an offending row into the pivot row and retry
			bool divides = true;
			for (std::size_t i = t + 1; i < rows && divides; ++i)
				for (std::size_t j = t + 1; j < cols; ++j)
					if (a(i, j) % a(t, t) != 0)
					{
						r.add_row(t, i, 1);
						divides = false;
						break;
					}
			if (divides)
				break;
		}
		if (a(t, t) < 0)
			r.negate_row(t);
	}
done:
	SmithForm f;
	f.rank = t;
	f.diagonal.resize(n, 0);
	for (std::size_t i = 0; i < n; ++i)
		f.diagonal[i] = a(i, i);
	f.U = std::move(r.u);
	f.U_inv = std::move(r.u_inv);
	f.V = std::move(r.v);
	f.V_inv = std::move(r.v_inv);
	return f;
}

} // namespace nzeta
