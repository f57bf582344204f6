#pragma once

#include "nzeta/groupring.hpp"
#include "nzeta/groups.hpp"
#include "nzeta/hochschild.hpp"
#include "nzeta/novikov.hpp"
#include "nzeta/zeta.hpp"

#include <random>
#include <vector>

namespace nzeta::test {

inline SpecPtr integers(Rational xi = -1) { return GroupSpec::make_free_abelian(1, {xi}); }
inline SpecPtr z2(Rational a = -1, Rational b = -1) { return GroupSpec::make_free_abelian(2, {a, b}); }
inline SpecPtr f2(Rational a = -1, Rational b = Rational(-3, 2)) { return GroupSpec::make_free(2, {a, b}); }

// t^k in Z (free abelian rank 1)
inline Word tpow(std::int64_t k) { return Word{static_cast<std::int32_t>(k)}; }

inline GroupRingElem mono(SpecPtr const &s, Word w, Rational c = 1, CoeffRing r = CoeffRing::integer)
{
	return GroupRingElem::monomial(s, std::move(w), c, r);
}

// sum_i coeffs[i] * t^i over Z[Z]
inline GroupRingElem poly(SpecPtr const &s, std::vector<std::int64_t> const &coeffs, std::int64_t shift = 0)
{
	std::vector<GroupRingElem::Term> t;
	for (std::size_t i = 0; i < coeffs.size(); ++i)
		if (coeffs[i] != 0)
			t.emplace_back(tpow(static_cast<std::int64_t>(i) + shift), Rational(coeffs[i]));
	return GroupRingElem::from_terms(s, CoeffRing::integer, std::move(t));
}

inline GRMatrix mat1(GroupRingElem e) { return GRMatrix(1, 1, std::move(e)); }

struct Rng
{
	std::mt19937_64 gen;
	explicit Rng(std::uint64_t seed) : gen(seed) {}

	std::int64_t uniform(std::int64_t lo, std::int64_t hi)
	{
		return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
	}

	// random reduced word in a free group or random vector in Z^n
	Word word(GroupSpec const &s, int max_len = 5, int max_exp = 3)
	{
		if (s.kind() == GroupKind::free_abelian)
		{
			Word::Storage v;
			for (int i = 0; i < s.rank(); ++i)
				v.push_back(static_cast<std::int32_t>(uniform(-max_exp, max_exp)));
			return Word(std::move(v));
		}
		std::vector<std::int32_t> raw;
		auto len = uniform(0, max_len);
		for (std::int64_t i = 0; i < len; ++i)
		{
			auto g = static_cast<std::int32_t>(uniform(1, s.rank()));
			raw.push_back(uniform(0, 1) ? g : -g);
		}
		return s.reduce(raw);
	}

	// word with xi <= max_xi, by rejection
	Word word_below(GroupSpec const &s, Rational max_xi, int max_len = 4, int max_exp = 2)
	{
		for (;;)
		{
			Word w = word(s, max_len, max_exp);
			if (s.xi_value(w) <= max_xi)
				return w;
		}
	}

	GroupRingElem elem(SpecPtr const &s, int max_terms = 3, std::int64_t max_coef = 3, int max_len = 4,
	                   CoeffRing ring = CoeffRing::integer)
	{
		std::vector<GroupRingElem::Term> t;
		auto n = uniform(0, max_terms);
		for (std::int64_t i = 0; i < n; ++i)
		{
			auto c = uniform(-max_coef, max_coef);
			if (c != 0)
				t.emplace_back(word(*s, max_len), Rational(c));
		}
		return GroupRingElem::from_terms(s, ring, std::move(t));
	}

	GroupRingElem elem_below(SpecPtr const &s, Rational max_xi, int max_terms = 3, std::int64_t max_coef = 3)
	{
		std::vector<GroupRingElem::Term> t;
		auto n = uniform(1, max_terms);
		for (;;)
		{
			for (std::int64_t i = 0; i < n; ++i)
			{
				auto c = uniform(1, max_coef) * (uniform(0, 1) ? 1 : -1);
				t.emplace_back(word_below(*s, max_xi), Rational(c));
			}
			auto e = GroupRingElem::from_terms(s, CoeffRing::integer, std::move(t));
			if (!e.is_zero())
				return e;
			t.clear();
		}
	}

	Chain1 chain1(SpecPtr const &s, int max_terms = 4)
	{
		Chain1 c(s);
		auto n = uniform(0, max_terms);
		for (std::int64_t i = 0; i < n; ++i)
			c.push({word(*s), word(*s)}, Rational(uniform(-3, 3)));
		c.normalize();
		return c;
	}

	Chain2 chain2(SpecPtr const &s, int max_terms = 4)
	{
		Chain2 c(s);
		auto n = uniform(0, max_terms);
		for (std::int64_t i = 0; i < n; ++i)
			c.push({word(*s, 3), word(*s, 3), word(*s, 3)}, Rational(uniform(-3, 3)));
		c.normalize();
		return c;
	}
};

} // namespace nzeta::test

namespace nzeta {
inline void PrintTo(GroupRingElem const &e, std::ostream *os) { *os << e.str(); }
inline void PrintTo(NovikovSeries const &e, std::ostream *os) { *os << e.body.str() << " (cutoff " << e.cutoff.str() << ")"; }
inline void PrintTo(Word const &w, std::ostream *os)
{
	*os << "[";
	for (std::size_t i = 0; i < w.size(); ++i)
		*os << (i ? "," : "") << w[i];
	*os << "]";
}
inline void PrintTo(Chain1 const &c, std::ostream *os) { *os << (c.spec() ? c.str() : "0"); }
inline void PrintTo(Chain2 const &c, std::ostream *os) { *os << (c.spec() ? c.str() : "0"); }
inline void PrintTo(Level const &l, std::ostream *os) { *os << l.str(); }
inline void PrintTo(Rational const &r, std::ostream *os) { *os << r.str(); }
inline void PrintTo(HH1ClassValue const &v, std::ostream *os) { *os << v.str(); }
inline void PrintTo(OrbitRecord const &r, std::ostream *os)
{
	PrintTo(r.primitive, os);
	*os << "^" << r.multiplicity << " sign " << r.sign;
}
} // namespace nzeta
