#pragma once

#include "nzeta/groups.hpp"
#include "nzeta/matrix.hpp"
#include "nzeta/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace nzeta {

enum class CoeffRing { integer, rational };

// A finitely supported element of ZG or QG: sorted (by raw word order) list of
// terms with nonzero coefficients.
class GroupRingElem
{
  public:
	using Term = std::pair<Word, Rational>;

	GroupRingElem() = default;
	explicit GroupRingElem(SpecPtr spec, CoeffRing ring = CoeffRing::integer)
	    : spec_(std::move(spec)), ring_(ring)
	{
	}

	// Sorts, merges equal words and drops zeros. Words are validated.
	static GroupRingElem from_terms(SpecPtr spec, CoeffRing ring, std::vector<Term> terms);
	static GroupRingElem monomial(SpecPtr spec, Word w, Rational c = 1, CoeffRing ring = CoeffRing::integer);
	static GroupRingElem one(SpecPtr spec, CoeffRing ring = CoeffRing::integer);

	SpecPtr const &spec() const { return spec_; }
	CoeffRing ring() const { return ring_; }
	std::vector<Term> const &terms() const { return terms_; }
	std::size_t size() const { return terms_.size(); }
	bool is_zero() const { return terms_.empty(); }
	Rational coeff(Word const &w) const;

	GroupRingElem operator-() const;
	GroupRingElem &operator+=(GroupRingElem const &o);
	GroupRingElem &operator-=(GroupRingElem const &o);
	friend GroupRingElem operator+(GroupRingElem a, GroupRingElem const &b) { return a += b; }
	friend GroupRingElem operator-(GroupRingElem a, GroupRingElem const &b) { return a -= b; }
	friend GroupRingElem operator*(GroupRingElem const &a, GroupRingElem const &b);
	friend GroupRingElem operator*(Rational const &c, GroupRingElem const &a);

	// max xi over the support; -inf for 0. The norm is exp(degree).
	Level degree() const;
	// Keeps exactly the terms with xi > level.
	GroupRingElem truncated_above(Level const &level) const;
	// Image in Z[H_1] (for free abelian groups: the same element).
	GroupRingElem augment() const;
	GroupRingElem to_rational() const;
	// Applies phi to every word (the twist of the bimodule).
	GroupRingElem apply_phi() const;

	// Terms in report order: descending xi, then the spec's word order.
	std::vector<Term> report_terms() const;
	std::string str() const;

	friend bool operator==(GroupRingElem const &a, GroupRingElem const &b);

  private:
	void check_compatible(GroupRingElem const &o) const;
	void normalize();

	SpecPtr spec_;
	CoeffRing ring_ = CoeffRing::integer;
	std::vector<Term> terms_;
};

GroupRingElem add(GroupRingElem const &a, GroupRingElem const &b);
GroupRingElem negate(GroupRingElem const &a);
GroupRingElem mul(GroupRingElem const &a, GroupRingElem const &b);
Level degree(GroupRingElem const &a);
GroupRingElem augment(GroupRingElem const &a);

using GRMatrix = Matrix<GroupRingElem>;

GRMatrix zero_matrix(SpecPtr const &spec, std::size_t rows, std::size_t cols, CoeffRing ring = CoeffRing::integer);
GRMatrix identity_matrix(SpecPtr const &spec, std::size_t n, CoeffRing ring = CoeffRing::integer);
GRMatrix operator*(GRMatrix const &a, GRMatrix const &b);
GRMatrix operator+(GRMatrix const &a, GRMatrix const &b);
GRMatrix operator-(GRMatrix const &a, GRMatrix const &b);
GroupRingElem trace(GRMatrix const &a);
Level degree(GRMatrix const &a);
GRMatrix truncated_above(GRMatrix const &a, Level const &level);
GRMatrix augment(GRMatrix const &a);
GRMatrix apply_phi(GRMatrix const &a);

} // namespace nzeta
