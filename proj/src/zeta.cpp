#include "nzeta/zeta.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nzeta {

namespace {

void require_negative_cutoff(Rational const &c, char const *what)
{
	if (c.sign() >= 0)
		throw std::invalid_argument(std::string(what) + ": cutoff must be negative");
}

void require_untwisted(SpecPtr const &spec, char const *what)
{
	if (spec->has_phi())
		throw std::invalid_argument(std::string(what) + ": needs phi = identity");
}

std::vector<Rational> zero_value(ClassIndex const &cls)
{
	return std::vector<Rational>(class_value_dimension(cls), Rational(0));
}

} // namespace

HH1ClassValue const *ZetaResult::find(ClassIndex const &cls) const
{
	for (auto const &v : classes)
		if (v.cls == cls)
			return &v;
	return nullptr;
}

ZetaResult finalize(CompletedChain1 chain)
{
	ZetaResult r;
	r.cutoff = chain.cutoff;
	for (auto const &cls : chain.classes())
		r.classes.push_back(extract_in_class(chain.per_class.at(cls), cls));
	r.chain = std::move(chain);
	return r;
}

ZetaResult dennis_trace_unit(TorsionUnit const &u, Rational const &cutoff)
{
	require_negative_cutoff(cutoff, "dennis_trace_unit");
	auto const &a = u.a;
	if (a.rows() == 0)
		throw std::invalid_argument("dennis_trace_unit: empty matrix");
	SpecPtr spec = a(0, 0).spec();
	require_untwisted(spec, "dennis_trace_unit");
	Level d = degree(a);
	CompletedChain1 chain(spec, Level(cutoff), a(0, 0).ring());
	if (d.is_neg_inf())
		return finalize(std::move(chain));
	// terms of A^{k-1} at or below cutoff - deg(A) cannot reach above the cutoff
	Level reach(cutoff - d.value());
	GRMatrix p = identity_matrix(spec, a.rows(), a(0, 0).ring());
	Chain1 sum(spec, a(0, 0).ring());
	for (std::int64_t k = 1; Level(k * d.value()) > Level(cutoff); ++k)
	{
		if (k > 1)
			p = truncated_above(p * a, reach);
		sum += trace_tensor(p, a);
	}
	Rational sign = (u.sign_exponent % 2 == 0) ? Rational(-1) : Rational(1);
	chain.add(sign * sum);
	return finalize(std::move(chain));
}

ZetaResult zeta_from_matrices(SpecPtr const &spec, std::vector<IndexedMatrix> const &as, Rational const &cutoff)
{
	require_negative_cutoff(cutoff, "zeta_from_matrices");
	require_untwisted(spec, "zeta_from_matrices");
	CompletedChain1 chain(spec, Level(cutoff));
	for (auto const &[i, a] : as)
	{
		if (degree(a) >= Level(0))
			throw std::invalid_argument("zeta_from_matrices: A_" + std::to_string(i) + " has degree " +
			                            degree(a).str() + ", must be negative");
		auto part = dennis_trace_unit(TorsionUnit(a, i + 1), cutoff);
		chain.merge(part.chain);
	}
	return finalize(std::move(chain));
}

ZetaResult nielsen_fuller(SpecPtr const &spec, std::vector<OrbitRecord> const &orbits, Rational const &cutoff)
{
	require_negative_cutoff(cutoff, "nielsen_fuller");
	require_untwisted(spec, "nielsen_fuller");
	CompletedChain1 chain(spec, Level(cutoff));
	Chain1 sum(spec);
	for (auto const &o : orbits)
	{
		spec->validate(o.primitive);
		if (spec->xi_value(o.primitive).sign() >= 0)
			throw std::invalid_argument("orbit record " + spec->word_str(o.primitive) + " has xi >= 0");
		if (o.multiplicity < 1)
			throw std::invalid_argument("orbit multiplicity must be >= 1");
		if (o.sign != 1 && o.sign != -1)
			throw std::invalid_argument("orbit sign must be +1 or -1");
		if (!(spec->xi_value(o.primitive) * Rational(o.multiplicity) > cutoff))
			continue;
		sum.push({spec->power(o.primitive, o.multiplicity - 1), o.primitive}, Rational(o.sign));
	}
	sum.normalize();
	chain.add(sum);
	return finalize(std::move(chain));
}

EtaSeries eta(ZetaResult const &z) { return l_hom(z.chain); }

EtaSeries eta_from_orbits(SpecPtr const &spec, std::vector<OrbitRecord> const &orbits, Rational const &cutoff)
{
	EtaSeries out;
	for (auto const &o : orbits)
	{
		Word w = spec->power(o.primitive, o.multiplicity);
		if (!(spec->xi_value(w) > cutoff))
			continue;
		out[class_of(spec, w)] += Rational(o.sign, o.multiplicity);
	}
	for (auto it = out.begin(); it != out.end();)
		it = it->second.is_zero() ? out.erase(it) : std::next(it);
	return out;
}

NovikovSeries abelianize_eta(SpecPtr const &spec, EtaSeries const &e, Rational const &cutoff)
{
	auto ab = spec->abelianization();
	std::vector<GroupRingElem::Term> terms;
	for (auto const &[cls, q] : e)
	{
		auto v = spec->exponent_sums(cls.canonical);
		terms.emplace_back(Word(Word::Storage(v.begin(), v.end())), q);
	}
	return NovikovSeries(GroupRingElem::from_terms(ab, CoeffRing::rational, std::move(terms)), Level(cutoff));
}

NovikovSeries commutative_zeta(ZetaResult const &z, Rational const &cutoff)
{
	require_negative_cutoff(cutoff, "commutative_zeta");
	require_untwisted(z.chain.spec, "commutative_zeta");
	if (Level(cutoff) < z.cutoff)
		throw std::invalid_argument("commutative_zeta: cutoff below the zeta result's cutoff");
	return exp_series(abelianize_eta(z.chain.spec, eta(z), cutoff), cutoff);
}

NovikovSeries commutative_zeta_determinant(SpecPtr const &spec, std::vector<IndexedMatrix> const &as,
                                           Rational const &cutoff)
{
	require_negative_cutoff(cutoff, "commutative_zeta_determinant");
	auto ab = spec->abelianization();
	NovikovSeries prod(GroupRingElem::one(ab, CoeffRing::rational), Level(cutoff));
	for (auto const &[i, a] : as)
	{
		if (degree(a) >= Level(0))
			throw std::invalid_argument("commutative_zeta_determinant: degree must be negative");
		std::int64_t power = (i % 2 == 0) ? -1 : 1;
		auto det = log_det_one_minus(NovikovMatrix(augment(a)), cutoff, power);
		prod = truncate(nv_mul(prod, det), Level(cutoff));
	}
	return prod;
}

ZetaResult rational_zeta(ZetaResult const &z) { return finalize(z.chain.rationalize()); }

std::vector<ClassIndex> rational_zeta_mismatches(ZetaResult const &z)
{
	auto q = rational_zeta(z);
	auto e = eta(z);
	std::vector<ClassIndex> bad;
	std::vector<ClassIndex> all = z.chain.classes();
	for (auto const &[cls, v] : e)
		if (std::find(all.begin(), all.end(), cls) == all.end())
			all.push_back(cls);
	for (auto const &cls : all)
	{
		auto const *lhs = q.find(cls);
		auto it = e.find(cls);
		auto rhs = extract_in_class(e_hom(cls, it == e.end() ? Rational(0) : it->second), cls);
		auto lv = lhs ? lhs->value : zero_value(cls);
		if (!(lv == rhs.value))
			bad.push_back(cls);
	}
	std::sort(bad.begin(), bad.end(), class_report_less);
	return bad;
}

ZetaResult one_parameter_trace(GRMatrix const &d, GRMatrix const &bnd, std::vector<ClassIndex> const &excluded,
                               int bound)
{
	if (d.rows() == 0 || d.cols() == 0)
		throw std::invalid_argument("one_parameter_trace: empty matrix");
	auto spec = d(0, 0).spec();
	auto z = trace_tensor(d, bnd);
	CompletedChain1 chain(spec, Level::neg_inf(), z.ring());
	for (auto &[cls, part] : decompose(z, bound))
	{
		bool skip = false;
		for (auto const &ex : excluded)
			if (ex.exactness == Exactness::exact ? ex == cls : in_class(ex, cls.canonical, bound))
				skip = true;
		if (!skip)
			chain.add_class(cls, part);
	}
	try
	{
		return finalize(std::move(chain));
	}
	catch (std::domain_error const &e)
	{
		throw std::domain_error(std::string(e.what()) + " (is the excluded class set complete?)");
	}
}

std::vector<OrbitRecord> enumerate_orbits_monomial(GRMatrix const &a, Rational const &cutoff,
                                                   std::int64_t dimension_index)
{
	require_negative_cutoff(cutoff, "enumerate_orbits_monomial");
	if (!a.square() || a.rows() == 0)
		throw std::invalid_argument("enumerate_orbits_monomial: needs a nonempty square matrix");
	auto spec = a(0, 0).spec();
	struct Edge
	{
		std::size_t from, to;
		Word label;
		Rational xi;
		int sign;
	};
	std::vector<Edge> edges;
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
		{
			auto const &e = a(i, j);
			if (e.is_zero())
				continue;
			if (e.size() != 1 || !e.terms()[0].second.is_integer())
				throw std::invalid_argument("enumerate_orbits_monomial: entry (" + std::to_string(i + 1) + "," +
				                            std::to_string(j + 1) + ") is not a monomial");
			auto const &[g, c] = e.terms()[0];
			Rational x = spec->xi_value(g);
			if (x.sign() >= 0)
				throw std::invalid_argument("enumerate_orbits_monomial: entries need xi < 0");
			std::int64_t n = c.num() < 0 ? -c.num() : c.num();
			for (std::int64_t r = 0; r < n; ++r)
				edges.push_back({i, j, g, x, c.sign()});
		}
	std::vector<std::vector<std::size_t>> out_edges(a.rows());
	for (std::size_t e = 0; e < edges.size(); ++e)
		out_edges[edges[e].from].push_back(e);

	std::vector<OrbitRecord> records;
	std::vector<std::size_t> walk;
	int dim_sign = (dimension_index % 2 == 0) ? 1 : -1;

	auto emit = [&]() {
		std::size_t k = walk.size();
		// keep only the lexicographically least rotation
		for (std::size_t r = 1; r < k; ++r)
		{
			for (std::size_t i = 0; i < k; ++i)
			{
				std::size_t a_ = walk[(r + i) % k], b_ = walk[i];
				if (a_ < b_)
					return;
				if (a_ > b_)
					break;
			}
		}
		std::size_t p = k;
		for (std::size_t d = 1; d <= k; ++d)
		{
			if (k % d != 0)
				continue;
			bool periodic = true;
			for (std::size_t i = d; i < k && periodic; ++i)
				periodic = walk[i] == walk[i - d];
			if (periodic)
			{
				p = d;
				break;
			}
		}
		OrbitRecord rec;
		rec.primitive = spec->identity();
		int s = 1;
		for (std::size_t i = 0; i < p; ++i)
		{
			rec.primitive = spec->mul(rec.primitive, edges[walk[i]].label);
			s *= edges[walk[i]].sign;
		}
		rec.multiplicity = static_cast<std::int64_t>(k / p);
		rec.sign = dim_sign * ((rec.multiplicity % 2 == 0) ? 1 : s);
		records.push_back(std::move(rec));
	};

	// Walk levels in integer units of 1/scale (scale = lcm of all denominators),
	// exact and free of per-step gcds; sums stay within (cutoff, 0).
	Rational scale(1);
	for (auto const &e : edges)
		scale = scale * Rational(e.xi.den()) / Rational(std::gcd(scale.num(), e.xi.den()));
	scale = scale * Rational(cutoff.den()) / Rational(std::gcd(scale.num(), cutoff.den()));
	std::int64_t cut = (cutoff * scale).num();
	std::vector<std::int64_t> exi;
	for (auto const &e : edges)
		exi.push_back((e.xi * scale).num());

	// depth-first over walks starting with their smallest edge index
	auto extend = [&](auto &self, std::size_t start_vertex, std::size_t v, std::int64_t xi) -> void {
		for (std::size_t e : out_edges[v])
		{
			if (e < walk.front())
				continue;
			std::int64_t x = xi + exi[e];
			if (x <= cut)
				continue;
			walk.push_back(e);
			if (edges[e].to == start_vertex)
				emit();
			self(self, start_vertex, edges[e].to, x);
			walk.pop_back();
		}
	};
	for (std::size_t e0 = 0; e0 < edges.size(); ++e0)
	{
		if (exi[e0] <= cut)
			continue;
		walk.assign(1, e0);
		if (edges[e0].to == edges[e0].from)
			emit();
		extend(extend, edges[e0].from, edges[e0].to, exi[e0]);
	}
	return records;
}

std::vector<ClassIndex> compare_results(ZetaResult const &a, ZetaResult const &b)
{
	Level cut = max(a.cutoff, b.cutoff);
	std::vector<ClassIndex> all;
	for (auto const *r : {&a, &b})
		for (auto const &v : r->classes)
			if (Level(v.cls.xi) > cut && std::find(all.begin(), all.end(), v.cls) == all.end())
				all.push_back(v.cls);
	std::vector<ClassIndex> bad;
	for (auto const &cls : all)
	{
		auto const *x = a.find(cls);
		auto const *y = b.find(cls);
		auto xv = x ? x->value : zero_value(cls);
		auto yv = y ? y->value : zero_value(cls);
		if (!(xv == yv))
			bad.push_back(cls);
	}
	std::sort(bad.begin(), bad.end(), class_report_less);
	return bad;
}

std::vector<ClassIndex> compare_eta(EtaSeries const &a, EtaSeries const &b)
{
	std::vector<ClassIndex> bad;
	for (auto const &[cls, q] : a)
	{
		auto it = b.find(cls);
		if (it == b.end() || !(it->second == q))
			bad.push_back(cls);
	}
	for (auto const &[cls, q] : b)
		if (a.find(cls) == a.end())
			bad.push_back(cls);
	std::sort(bad.begin(), bad.end(), class_report_less);
	return bad;
}

} // namespace nzeta
