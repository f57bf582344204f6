#include "nzeta/groupring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nzeta {

namespace {

void merge_sorted(std::vector<GroupRingElem::Term> &terms)
{
	std::sort(terms.begin(), terms.end(), [](auto const &x, auto const &y) { return x.first < y.first; });
	std::size_t out = 0;
	for (std::size_t i = 0; i < terms.size();)
	{
		std::size_t j = i + 1;
		Rational c = terms[i].second;
		while (j < terms.size() && terms[j].first == terms[i].first)
			c += terms[j++].second;
		if (!c.is_zero())
		{
			if (out != i)
				terms[out].first = std::move(terms[i].first);
			terms[out].second = c;
			++out;
		}
		i = j;
	}
	terms.resize(out);
}

} // namespace

GroupRingElem GroupRingElem::from_terms(SpecPtr spec, CoeffRing ring, std::vector<Term> terms)
{
	GroupRingElem e(std::move(spec), ring);
	for (auto const &t : terms)
		e.spec_->validate(t.first);
	e.terms_ = std::move(terms);
	e.normalize();
	return e;
}

GroupRingElem GroupRingElem::monomial(SpecPtr spec, Word w, Rational c, CoeffRing ring)
{
	std::vector<Term> t;
	t.emplace_back(std::move(w), c);
	return from_terms(std::move(spec), ring, std::move(t));
}

GroupRingElem GroupRingElem::one(SpecPtr spec, CoeffRing ring)
{
	Word id = spec->identity();
	return monomial(std::move(spec), std::move(id), 1, ring);
}

void GroupRingElem::normalize()
{
	if (ring_ == CoeffRing::integer)
		for (auto const &t : terms_)
			if (!t.second.is_integer())
				throw std::invalid_argument("non-integer coefficient " + t.second.str() + " in an integral group ring");
	merge_sorted(terms_);
}

void GroupRingElem::check_compatible(GroupRingElem const &o) const
{
	if (!same_spec(spec_, o.spec_))
		throw std::invalid_argument("group ring elements over different groups");
	if (ring_ != o.ring_)
		throw std::invalid_argument("group ring elements over different coefficient rings");
}

Rational GroupRingElem::coeff(Word const &w) const
{
	auto it = std::lower_bound(terms_.begin(), terms_.end(), w, [](Term const &t, Word const &x) { return t.first < x; });
	if (it != terms_.end() && it->first == w)
		return it->second;
	return Rational(0);
}

GroupRingElem GroupRingElem::operator-() const
{
	GroupRingElem r = *this;
	for (auto &t : r.terms_)
		t.second = -t.second;
	return r;
}

GroupRingElem &GroupRingElem::operator+=(GroupRingElem const &o)
{
	check_compatible(o);
	std::vector<Term> merged;
	merged.reserve(terms_.size() + o.terms_.size());
	std::size_t i = 0, j = 0;
	while (i < terms_.size() || j < o.terms_.size())
	{
		if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first))
			merged.push_back(std::move(terms_[i++]));
		else if (i == terms_.size() || o.terms_[j].first < terms_[i].first)
			merged.push_back(o.terms_[j++]);
		else
		{
			Rational c = terms_[i].second + o.terms_[j].second;
			if (!c.is_zero())
				merged.emplace_back(std::move(terms_[i].first), c);
			++i;
			++j;
		}
	}
	terms_ = std::move(merged);
	return *this;
}

GroupRingElem &GroupRingElem::operator-=(GroupRingElem const &o) { return *this += -o; }

GroupRingElem operator*(GroupRingElem const &a, GroupRingElem const &b)
{
	a.check_compatible(b);
	GroupRingElem r(a.spec_, a.ring_);
	if (a.is_zero() || b.is_zero())
		return r;
	r.terms_.reserve(a.terms_.size() * b.terms_.size());
	auto const &spec = *a.spec_;
	for (auto const &x : a.terms_)
		for (auto const &y : b.terms_)
			r.terms_.emplace_back(spec.mul(x.first, y.first), x.second * y.second);
	merge_sorted(r.terms_);
	return r;
}

GroupRingElem operator*(Rational const &c, GroupRingElem const &a)
{
	if (a.ring_ == CoeffRing::integer && !c.is_integer())
		throw std::invalid_argument("non-integer scalar on an integral group ring element");
	GroupRingElem r(a.spec_, a.ring_);
	if (c.is_zero())
		return r;
	r.terms_ = a.terms_;
	for (auto &t : r.terms_)
		t.second *= c;
	return r;
}

Level GroupRingElem::degree() const
{
	Level d;
	for (auto const &t : terms_)
		d = max(d, Level(spec_->xi_value(t.first)));
	return d;
}

GroupRingElem GroupRingElem::truncated_above(Level const &level) const
{
	if (level.is_neg_inf())
		return *this;
	GroupRingElem r(spec_, ring_);
	for (auto const &t : terms_)
		if (spec_->xi_value(t.first) > level.value())
			r.terms_.push_back(t);
	return r;
}

GroupRingElem GroupRingElem::augment() const
{
	if (spec_->kind() == GroupKind::free_abelian)
		return *this;
	auto ab = spec_->abelianization();
	std::vector<Term> t;
	t.reserve(terms_.size());
	for (auto const &x : terms_)
	{
		auto v = spec_->exponent_sums(x.first);
		Word::Storage s(v.begin(), v.end());
		t.emplace_back(Word(std::move(s)), x.second);
	}
	GroupRingElem r(std::move(ab), ring_);
	r.terms_ = std::move(t);
	merge_sorted(r.terms_);
	return r;
}

GroupRingElem GroupRingElem::to_rational() const
{
	GroupRingElem r = *this;
	r.ring_ = CoeffRing::rational;
	return r;
}

GroupRingElem GroupRingElem::apply_phi() const
{
	GroupRingElem r(spec_, ring_);
	r.terms_.reserve(terms_.size());
	for (auto const &t : terms_)
		r.terms_.emplace_back(spec_->apply_phi(t.first), t.second);
	merge_sorted(r.terms_);
	return r;
}

std::vector<GroupRingElem::Term> GroupRingElem::report_terms() const
{
	auto t = terms_;
	std::stable_sort(t.begin(), t.end(), [&](Term const &x, Term const &y) {
		auto a = spec_->xi_value(x.first), b = spec_->xi_value(y.first);
		if (a != b)
			return a > b;
		return spec_->word_less(x.first, y.first);
	});
	return t;
}

std::string GroupRingElem::str() const
{
	if (terms_.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (auto const &[w, c] : report_terms())
	{
		Rational mag = c.sign() < 0 ? -c : c;
		if (first)
			os << (c.sign() < 0 ? "-" : "");
		else
			os << (c.sign() < 0 ? " - " : " + ");
		first = false;
		bool unit_word = spec_->is_identity(w);
		if (!(mag == Rational(1)) || unit_word)
			os << mag.str();
		if (!unit_word)
			os << (mag == Rational(1) ? "" : "*") << spec_->word_str(w);
	}
	return os.str();
}

bool operator==(GroupRingElem const &a, GroupRingElem const &b)
{
	return same_spec(a.spec_, b.spec_) && a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

GroupRingElem add(GroupRingElem const &a, GroupRingElem const &b) { return a + b; }
GroupRingElem negate(GroupRingElem const &a) { return -a; }
GroupRingElem mul(GroupRingElem const &a, GroupRingElem const &b) { return a * b; }
Level degree(GroupRingElem const &a) { return a.degree(); }
GroupRingElem augment(GroupRingElem const &a) { return a.augment(); }

// ---- matrices ----------------------------------------------------------------

GRMatrix zero_matrix(SpecPtr const &spec, std::size_t rows, std::size_t cols, CoeffRing ring)
{
	return GRMatrix(rows, cols, GroupRingElem(spec, ring));
}

GRMatrix identity_matrix(SpecPtr const &spec, std::size_t n, CoeffRing ring)
{
	GRMatrix m = zero_matrix(spec, n, n, ring);
	for (std::size_t i = 0; i < n; ++i)
		m(i, i) = GroupRingElem::one(spec, ring);
	return m;
}

GRMatrix operator*(GRMatrix const &a, GRMatrix const &b)
{
	if (a.cols() != b.rows())
		throw std::invalid_argument("matrix product: shape mismatch");
	if (a.rows() == 0 || b.cols() == 0)
		return GRMatrix(a.rows(), b.cols(), GroupRingElem());
	GRMatrix r(a.rows(), b.cols(), GroupRingElem(a(0, 0).spec(), a(0, 0).ring()));
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t k = 0; k < a.cols(); ++k)
		{
			if (a(i, k).is_zero())
				continue;
			for (std::size_t j = 0; j < b.cols(); ++j)
				if (!b(k, j).is_zero())
					r(i, j) += a(i, k) * b(k, j);
		}
	return r;
}

GRMatrix operator+(GRMatrix const &a, GRMatrix const &b)
{
	if (a.rows() != b.rows() || a.cols() != b.cols())
		throw std::invalid_argument("matrix sum: shape mismatch");
	GRMatrix r = a;
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			r(i, j) += b(i, j);
	return r;
}

GRMatrix operator-(GRMatrix const &a, GRMatrix const &b)
{
	if (a.rows() != b.rows() || a.cols() != b.cols())
		throw std::invalid_argument("matrix difference: shape mismatch");
	GRMatrix r = a;
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			r(i, j) -= b(i, j);
	return r;
}

GroupRingElem trace(GRMatrix const &a)
{
	if (!a.square())
		throw std::invalid_argument("trace of a non-square matrix");
	if (a.rows() == 0)
		throw std::invalid_argument("trace of an empty matrix");
	GroupRingElem r(a(0, 0).spec(), a(0, 0).ring());
	for (std::size_t i = 0; i < a.rows(); ++i)
		r += a(i, i);
	return r;
}

Level degree(GRMatrix const &a)
{
	Level d;
	for (auto const &e : a)
		d = max(d, e.degree());
	return d;
}

GRMatrix truncated_above(GRMatrix const &a, Level const &level)
{
	return a.map([&](GroupRingElem const &e) { return e.truncated_above(level); });
}

GRMatrix augment(GRMatrix const &a)
{
	return a.map([](GroupRingElem const &e) { return e.augment(); });
}

GRMatrix apply_phi(GRMatrix const &a)
{
	return a.map([](GroupRingElem const &e) { return e.apply_phi(); });
}

} // namespace nzeta
