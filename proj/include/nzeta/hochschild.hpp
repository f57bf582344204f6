#pragma once

#include "nzeta/groupring.hpp"
#include "nzeta/novikov.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace nzeta {

// A Hochschild n-chain over ZG or QG with coefficients in the bimodule
// (ZG)^phi (phi = identity when the spec has none): formal sum of basis
// tensors g_1 (x) ... (x) g_{N}, sorted by raw word order, merged, no zeros.
template <std::size_t N> class Chain
{
  public:
	using Key = std::array<Word, N>;
	using Term = std::pair<Key, Rational>;

	Chain() = default;
	explicit Chain(SpecPtr spec, CoeffRing ring = CoeffRing::integer) : spec_(std::move(spec)), ring_(ring) {}

	static Chain from_terms(SpecPtr spec, CoeffRing ring, std::vector<Term> terms);

	SpecPtr const &spec() const { return spec_; }
	CoeffRing ring() const { return ring_; }
	bool twisted() const { return spec_ && spec_->has_phi(); }
	std::vector<Term> const &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	std::size_t size() const { return terms_.size(); }

	// The product g_1 ... g_N — the element whose class the term lies in.
	Word product(Key const &k) const;

	Chain operator-() const;
	Chain &operator+=(Chain const &o);
	Chain &operator-=(Chain const &o) { return *this += -o; }
	friend Chain operator+(Chain a, Chain const &b) { return a += b; }
	friend Chain operator-(Chain a, Chain const &b) { return a -= b; }
	friend Chain operator*(Rational const &c, Chain const &a)
	{
		if (a.ring_ == CoeffRing::integer && !c.is_integer())
			throw std::invalid_argument("non-integer scalar on an integral chain");
		Chain r(a.spec_, a.ring_);
		if (c.is_zero())
			return r;
		r.terms_ = a.terms_;
		for (auto &t : r.terms_)
			t.second *= c;
		return r;
	}

	Chain to_rational() const
	{
		Chain r = *this;
		r.ring_ = CoeffRing::rational;
		return r;
	}

	// Terms in report order: descending xi of the product, then word order.
	std::vector<Term> report_terms() const;
	std::string str() const;

	friend bool operator==(Chain const &a, Chain const &b)
	{
		return same_spec(a.spec_, b.spec_) && a.ring_ == b.ring_ && a.terms_ == b.terms_;
	}

	// Appends without normalizing; call normalize() afterwards.
	void push(Key k, Rational c) { terms_.emplace_back(std::move(k), c); }
	void normalize();

  private:
	void check_compatible(Chain const &o) const;

	SpecPtr spec_;
	CoeffRing ring_ = CoeffRing::integer;
	std::vector<Term> terms_;
};

using Chain1 = Chain<2>;
using Chain2 = Chain<3>;

extern template class Chain<2>;
extern template class Chain<3>;

Chain1 tensor(GroupRingElem const &a, GroupRingElem const &b);
Chain2 tensor(Chain1 const &a, GroupRingElem const &b);

// d(m (x) s) = m s - phi(s) m
GroupRingElem boundary1(Chain1 const &c);
// d(m (x) s1 (x) s2) = m s1 (x) s2 - m (x) s1 s2 + phi(s2) m (x) s1
Chain1 boundary2(Chain2 const &c);

// Keep exactly the terms whose product lies in cls (bounded classes use the
// class's search bound and throw when undecided).
Chain1 project_class(Chain1 const &c, ClassIndex const &cls, int bound = default_search_bound);
Chain2 project_class(Chain2 const &c, ClassIndex const &cls, int bound = default_search_bound);

using ClassChains = std::map<ClassIndex, Chain1, ClassKeyLess>;
// Splits a chain into its class components (eq (cgrps)).
ClassChains decompose(Chain1 const &c, int bound = default_search_bound);

// sum_{l,m} A_lm (x) B_ml
Chain1 trace_tensor(GRMatrix const &a, GRMatrix const &b);
Chain2 trace_tensor(Matrix<Chain1> const &a, GRMatrix const &b);

// The homology class of a per-class cycle in H_1(C(g)): coordinates in the
// abelianized (semi)centralizer. `cyclic` marks the free nonidentity case.
struct HH1ClassValue
{
	ClassIndex cls;
	std::vector<Rational> value;
	bool cyclic = false;

	bool is_zero() const;
	std::string str() const;
	friend bool operator==(HH1ClassValue const &a, HH1ClassValue const &b)
	{
		return a.cls == b.cls && a.value == b.value;
	}
};

// Choice of vertex witnesses for extraction. `canonical` uses the
// ClassIndex witness at every vertex. `spanning_tree` propagates witnesses
// along a BFS tree over the vertices in the order given by `vertex_order`
// (a permutation seed), starting each component at the ClassIndex witness
// times the centralizer element `root_shift`.
struct ExtractionMode
{
	enum class Kind { canonical, spanning_tree } kind = Kind::canonical;
	std::vector<std::size_t> vertex_order; // permutation of the sorted vertex list; empty = identity
	std::optional<Word> root_shift;
};

// Requires p_cls(z) to be a cycle; throws std::domain_error otherwise.
HH1ClassValue extract_class_value(Chain1 const &z, ClassIndex const &cls, ExtractionMode const &mode = {});
// The same for a chain already supported in cls (as the per-class chains of a
// CompletedChain1 are): skips the projection; a term outside cls still throws
// std::logic_error.
HH1ClassValue extract_in_class(Chain1 const &p, ClassIndex const &cls, ExtractionMode const &mode = {});

// Dimension of the value vector for a class (1 for cyclic centralizers).
std::size_t class_value_dimension(ClassIndex const &cls);

// ---- completed chains ------------------------------------------------------------

// Class-indexed chains, exact on classes with xi(class) > cutoff; no other
// classes are stored. Zero per-class chains are dropped.
struct CompletedChain1
{
	SpecPtr spec;
	CoeffRing ring = CoeffRing::integer;
	ClassChains per_class;
	Level cutoff;

	CompletedChain1() = default;
	CompletedChain1(SpecPtr s, Level c, CoeffRing r = CoeffRing::integer) : spec(std::move(s)), ring(r), cutoff(c) {}

	// Adds the class components of c with xi(class) > cutoff.
	void add(Chain1 const &c, int bound = default_search_bound);
	void add_class(ClassIndex const &cls, Chain1 const &c);
	CompletedChain1 scaled(Rational const &q) const;
	void merge(CompletedChain1 const &o);
	CompletedChain1 rationalize() const;
	// Classes in report order.
	std::vector<ClassIndex> classes() const;
};

Chain1 rationalize(Chain1 const &c);
Chain2 rationalize(Chain2 const &c);

using EtaSeries = std::map<ClassIndex, Rational, ClassKeyLess>;

// L/l homomorphism: per class with xi < 0, sum n * xi(g2) / xi(class).
EtaSeries l_hom(CompletedChain1 const &c);
Rational l_hom(Chain1 const &c, ClassIndex const &cls);

// q * (1 (x) canonical(cls)) over Q.
Chain1 e_hom(ClassIndex const &cls, Rational const &q);

// p_cls of the finite expansion of truncations of a (x) b. The class must
// lie above the exactness level max(c_a + D_b, c_b + D_a); `level` (default:
// that exactness level) selects the truncation M < xi(cls).
Chain1 theta_expand(NovikovSeries const &a, NovikovSeries const &b, ClassIndex const &cls,
                    std::optional<Rational> level = std::nullopt);
Level theta_exactness_level(NovikovSeries const &a, NovikovSeries const &b);

} // namespace nzeta
