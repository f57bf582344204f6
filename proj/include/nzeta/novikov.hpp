#pragma once

#include "nzeta/groupring.hpp"

#include <optional>

namespace nzeta {

// A truncated element of the Novikov completion: the value is known exactly
// on xi > cutoff (body holds exactly those terms) and unknown at or below it.
// cutoff = -inf means the element is an exact polynomial.
struct NovikovSeries
{
	GroupRingElem body;
	Level cutoff;

	NovikovSeries() = default;
	// Drops body terms at or below the cutoff.
	NovikovSeries(GroupRingElem b, Level c = Level::neg_inf());

	SpecPtr const &spec() const { return body.spec(); }
	CoeffRing ring() const { return body.ring(); }
	bool is_exact() const { return cutoff.is_neg_inf(); }
	// Degree of the known body.
	Level degree() const { return body.degree(); }
	// Upper bound on the degree of the true element: max(degree, cutoff).
	Level degree_bound() const { return max(body.degree(), cutoff); }

	friend bool operator==(NovikovSeries const &, NovikovSeries const &) = default;
};

NovikovSeries nv_add(NovikovSeries const &a, NovikovSeries const &b);
NovikovSeries nv_neg(NovikovSeries const &a);
NovikovSeries nv_sub(NovikovSeries const &a, NovikovSeries const &b);
// cutoff = max(c_a + D_b, c_b + D_a) with D_x = max(degree x, c_x).
NovikovSeries nv_mul(NovikovSeries const &a, NovikovSeries const &b);
NovikovSeries nv_scale(Rational const &c, NovikovSeries const &a);
// Raises the cutoff to max(cutoff, level).
NovikovSeries truncate(NovikovSeries const &a, Level const &level);

// (1 - a)^{-1} above target; requires degree_bound(a) < 0 and target < 0.
NovikovSeries geometric_series(NovikovSeries const &a, Rational const &target);

// A matrix of truncated series sharing one cutoff.
struct NovikovMatrix
{
	GRMatrix body;
	Level cutoff;

	NovikovMatrix() = default;
	NovikovMatrix(GRMatrix b, Level c = Level::neg_inf());

	std::size_t rows() const { return body.rows(); }
	std::size_t cols() const { return body.cols(); }
	Level degree() const { return nzeta::degree(body); }
	Level degree_bound() const { return max(degree(), cutoff); }
	NovikovSeries entry(std::size_t i, std::size_t j) const { return NovikovSeries(body(i, j), cutoff); }

	friend bool operator==(NovikovMatrix const &, NovikovMatrix const &) = default;
};

NovikovMatrix nv_add(NovikovMatrix const &a, NovikovMatrix const &b);
NovikovMatrix nv_mul(NovikovMatrix const &a, NovikovMatrix const &b);
NovikovMatrix truncate(NovikovMatrix const &a, Level const &level);
// (I - A)^{-1} = sum_k A^k above target.
NovikovMatrix matrix_geometric(NovikovMatrix const &a, Rational const &target);

// exp(a) above target; rational coefficients and degree_bound(a) < 0.
NovikovSeries exp_series(NovikovSeries const &a, Rational const &target);
// det(I - B)^power above target, computed as exp(-power * sum_k trace(B^k)/k).
// Only over commutative groups; degree_bound(B) < 0.
NovikovSeries log_det_one_minus(NovikovMatrix const &b, Rational const &target, std::int64_t power = 1);

// A torsion unit I - A (1x1 for the scalar form 1 - a) with degree(A) < 0,
// carrying the sign exponent used when assembling alternating sums.
struct TorsionUnit
{
	GRMatrix a;
	std::int64_t sign_exponent = 0;

	TorsionUnit(GRMatrix a_, std::int64_t sign = 0);
	static TorsionUnit scalar(GroupRingElem a_, std::int64_t sign = 0);
};

// Factors x = sign * g * (1 - a) with degree(a) < 0. Requires the top-xi
// term of x to be unique with coefficient +-1; returns nullopt otherwise.
struct UnitFactorization
{
	int sign = 1;
	Word g;
	GroupRingElem a;
};
std::optional<UnitFactorization> as_torsion_unit(GroupRingElem const &x);

} // namespace nzeta
