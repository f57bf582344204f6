#include "nzeta/novikov.hpp"

#include <stdexcept>

namespace nzeta {

namespace {

// Least K >= 1 with K * d <= target, for d < 0 (d = -inf gives 1).
std::int64_t power_bound(Level const &d, Rational const &target)
{
	if (d.is_neg_inf())
		return 1;
	Rational q = target / d.value(); // > 0
	std::int64_t k = q.num() / q.den();
	if (Rational(k) < q)
		++k;
	return k < 1 ? 1 : k;
}

void require_negative(Level const &d, char const *what)
{
	if (d.is_finite() && d.value().sign() >= 0)
		throw std::invalid_argument(std::string(what) + ": degree must be negative, got " + d.str());
}

void require_negative_target(Rational const &t, char const *what)
{
	if (t.sign() >= 0)
		throw std::invalid_argument(std::string(what) + ": target must be negative, got " + t.str());
}

Level product_cutoff(Level const &ca, Level const &da, Level const &cb, Level const &db)
{
	return max(ca + db, cb + da);
}

bool commutative(GroupSpec const &s) { return s.kind() == GroupKind::free_abelian || s.rank() == 1; }

} // namespace

NovikovSeries::NovikovSeries(GroupRingElem b, Level c) : body(b.truncated_above(c)), cutoff(c) {}

NovikovSeries nv_add(NovikovSeries const &a, NovikovSeries const &b)
{
	Level c = max(a.cutoff, b.cutoff);
	return NovikovSeries(a.body + b.body, c);
}

NovikovSeries nv_neg(NovikovSeries const &a) { return NovikovSeries(-a.body, a.cutoff); }

NovikovSeries nv_sub(NovikovSeries const &a, NovikovSeries const &b) { return nv_add(a, nv_neg(b)); }

NovikovSeries nv_mul(NovikovSeries const &a, NovikovSeries const &b)
{
	Level c = product_cutoff(a.cutoff, a.degree_bound(), b.cutoff, b.degree_bound());
	return NovikovSeries(a.body * b.body, c);
}

NovikovSeries nv_scale(Rational const &c, NovikovSeries const &a) { return NovikovSeries(c * a.body, a.cutoff); }

NovikovSeries truncate(NovikovSeries const &a, Level const &level)
{
	return NovikovSeries(a.body, max(a.cutoff, level));
}

NovikovSeries geometric_series(NovikovSeries const &a, Rational const &target)
{
	Level d = a.degree_bound();
	require_negative(d, "geometric_series");
	require_negative_target(target, "geometric_series");
	std::int64_t K = power_bound(d, target);
	NovikovSeries one(GroupRingElem::one(a.spec(), a.ring()), target);
	NovikovSeries sum = one, p = one;
	for (std::int64_t k = 1; k <= K; ++k)
	{
		p = truncate(nv_mul(p, a), target);
		if (p.body.is_zero() && p.cutoff == Level(target))
			break;
		sum = nv_add(sum, p);
	}
	return sum;
}

// ---- matrices ------------------------------------------------------------------

NovikovMatrix::NovikovMatrix(GRMatrix b, Level c) : body(truncated_above(b, c)), cutoff(c) {}

NovikovMatrix nv_add(NovikovMatrix const &a, NovikovMatrix const &b)
{
	return NovikovMatrix(a.body + b.body, max(a.cutoff, b.cutoff));
}

NovikovMatrix nv_mul(NovikovMatrix const &a, NovikovMatrix const &b)
{
	Level c = product_cutoff(a.cutoff, a.degree_bound(), b.cutoff, b.degree_bound());
	return NovikovMatrix(a.body * b.body, c);
}

NovikovMatrix truncate(NovikovMatrix const &a, Level const &level)
{
	return NovikovMatrix(a.body, max(a.cutoff, level));
}

NovikovMatrix matrix_geometric(NovikovMatrix const &a, Rational const &target)
{
	if (!a.body.square() || a.rows() == 0)
		throw std::invalid_argument("matrix_geometric: needs a nonempty square matrix");
	Level d = a.degree_bound();
	require_negative(d, "matrix_geometric");
	require_negative_target(target, "matrix_geometric");
	auto const &e = a.body(0, 0);
	std::int64_t K = power_bound(d, target);
	NovikovMatrix id(identity_matrix(e.spec(), a.rows(), e.ring()), target);
	NovikovMatrix sum = id, p = id;
	for (std::int64_t k = 1; k <= K; ++k)
	{
		p = truncate(nv_mul(p, a), target);
		sum = nv_add(sum, p);
	}
	return sum;
}

// ---- commutative tools ---------------------------------------------------------

NovikovSeries exp_series(NovikovSeries const &a, Rational const &target)
{
	if (a.ring() != CoeffRing::rational)
		throw std::invalid_argument("exp_series: needs rational coefficients");
	Level d = a.degree_bound();
	require_negative(d, "exp_series");
	require_negative_target(target, "exp_series");
	std::int64_t K = power_bound(d, target);
	NovikovSeries one(GroupRingElem::one(a.spec(), CoeffRing::rational), target);
	NovikovSeries sum = one, p = one;
	for (std::int64_t m = 1; m <= K; ++m)
	{
		p = nv_scale(Rational(1, m), truncate(nv_mul(p, a), target));
		sum = nv_add(sum, p);
	}
	return sum;
}

NovikovSeries log_det_one_minus(NovikovMatrix const &b, Rational const &target, std::int64_t power)
{
	if (!b.body.square() || b.rows() == 0)
		throw std::invalid_argument("log_det_one_minus: needs a nonempty square matrix");
	auto spec = b.body(0, 0).spec();
	if (!commutative(*spec))
		throw std::invalid_argument("log_det_one_minus: determinants need a commutative group");
	Level d = b.degree_bound();
	require_negative(d, "log_det_one_minus");
	require_negative_target(target, "log_det_one_minus");
	NovikovMatrix q(b.body.map([](GroupRingElem const &x) { return x.to_rational(); }), b.cutoff);
	std::int64_t K = power_bound(d, target);
	NovikovSeries log_sum(GroupRingElem(spec, CoeffRing::rational), target);
	NovikovMatrix p = q;
	for (std::int64_t k = 1; k <= K; ++k)
	{
		if (k > 1)
			p = truncate(nv_mul(p, q), target);
		NovikovSeries tr(trace(p.body), max(p.cutoff, Level(target)));
		log_sum = nv_add(log_sum, nv_scale(Rational(1, k), tr));
	}
	return exp_series(nv_scale(Rational(-power), log_sum), target);
}

// ---- torsion units ---------------------------------------------------------------

TorsionUnit::TorsionUnit(GRMatrix a_, std::int64_t sign) : a(std::move(a_)), sign_exponent(sign)
{
	if (!a.square())
		throw std::invalid_argument("torsion unit: I - A needs a square A");
	require_negative(degree(a), "torsion unit");
}

TorsionUnit TorsionUnit::scalar(GroupRingElem a_, std::int64_t sign)
{
	GRMatrix m(1, 1, std::move(a_));
	return TorsionUnit(std::move(m), sign);
}

std::optional<UnitFactorization> as_torsion_unit(GroupRingElem const &x)
{
	if (x.is_zero())
		return std::nullopt;
	auto const &spec = *x.spec();
	Level top = x.degree();
	std::optional<GroupRingElem::Term> lead;
	for (auto const &t : x.terms())
		if (Level(spec.xi_value(t.first)) == top)
		{
			if (lead)
				return std::nullopt;
			lead = t;
		}
	if (!(lead->second == Rational(1)) && !(lead->second == Rational(-1)))
		return std::nullopt;
	UnitFactorization f;
	f.sign = lead->second.sign();
	f.g = lead->first;
	auto ginv = GroupRingElem::monomial(x.spec(), spec.inverse(f.g), f.sign, x.ring());
	f.a = GroupRingElem::one(x.spec(), x.ring()) - ginv * x;
	return f;
}

} // namespace nzeta
