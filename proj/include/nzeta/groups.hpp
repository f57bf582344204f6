#pragma once

#include "nzeta/rational.hpp"
#include "nzeta/smith.hpp"

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nzeta {

enum class GroupKind { free, free_abelian };

// A group element. For free groups: a freely reduced sequence of signed
// generator indices (+i = x_i, -i = x_i^-1, 1-based). For free abelian
// groups: the exponent vector. Which reading applies is decided by the
// GroupSpec the word belongs to.
class Word
{
  public:
	using Storage = boost::container::small_vector<std::int32_t, 6>;

	Word() = default;
	Word(std::initializer_list<std::int32_t> l) : data_(l) {}
	explicit Word(Storage s) : data_(std::move(s)) {}

	std::size_t size() const { return data_.size(); }
	bool empty() const { return data_.empty(); }
	std::int32_t operator[](std::size_t i) const { return data_[i]; }
	std::int32_t &operator[](std::size_t i) { return data_[i]; }
	auto begin() const { return data_.begin(); }
	auto end() const { return data_.end(); }
	Storage const &storage() const { return data_; }
	Storage &storage() { return data_; }

	// Raw lexicographic order on the integer sequence; used for containers
	// only. Display order is GroupSpec::word_less.
	friend bool operator==(Word const &a, Word const &b) { return a.data_ == b.data_; }
	friend bool operator<(Word const &a, Word const &b) { return a.data_ < b.data_; }

	std::vector<std::int64_t> to_vector() const { return {data_.begin(), data_.end()}; }

  private:
	Storage data_;
};

class GroupSpec;
using SpecPtr = std::shared_ptr<const GroupSpec>;

// SNF data of L = I - M for the twisted classes of a free abelian group (or
// of the abelianized endomorphism of a free group).
struct TwistLattice
{
	IntMatrix shift; // L = I - M
	SmithForm smith;
	std::vector<std::vector<std::int64_t>> kernel_basis; // basis of ker L
};

// A supported group backend with its grading xi and an optional endomorphism.
class GroupSpec
{
  public:
	static SpecPtr make_free(int rank, std::vector<Rational> xi,
	                         std::optional<std::vector<Word>> phi_images = std::nullopt);
	static SpecPtr make_free_abelian(int rank, std::vector<Rational> xi,
	                                 std::optional<IntMatrix> phi_matrix = std::nullopt);

	GroupKind kind() const { return kind_; }
	int rank() const { return rank_; }
	std::vector<Rational> const &xi() const { return xi_; }
	bool has_phi() const { return phi_matrix_.has_value() || phi_images_.has_value(); }
	std::optional<IntMatrix> const &phi_matrix() const { return phi_matrix_; }
	std::optional<std::vector<Word>> const &phi_images() const { return phi_images_; }

	// The induced map on H_1 = Z^n (identity when phi is absent).
	IntMatrix abelian_phi() const;
	// Present when phi is given.
	TwistLattice const *twist_lattice() const { return lattice_.get(); }

	Word identity() const;
	Word reduce(std::span<const std::int32_t> raw) const;
	Word reduce(std::initializer_list<std::int32_t> raw) const
	{
		return reduce(std::span<const std::int32_t>(raw.begin(), raw.size()));
	}
	Word generator(int i) const; // 1-based
	Word mul(Word const &a, Word const &b) const;
	Word mul(Word const &a, Word const &b, Word const &c) const { return mul(mul(a, b), c); }
	Word inverse(Word const &a) const;
	Word power(Word const &a, std::int64_t k) const;
	Word apply_phi(Word const &a) const;
	bool is_identity(Word const &a) const;
	// Throws std::invalid_argument if w is not a valid element of this group.
	void validate(Word const &w) const;

	Rational xi_value(Word const &w) const;
	// Exponent sums of the generators: the image in H_1 = Z^n.
	std::vector<std::int64_t> exponent_sums(Word const &w) const;
	// Positive generator of the image of xi inside Q (0 when xi vanishes).
	Rational xi_image_generator() const;

	// Z^n with the same xi and the abelianized phi. For a free abelian group
	// this is an equal spec.
	SpecPtr abelianization() const;

	// Fixed total order for display: free groups compare letters under
	// x1 < x1^-1 < x2 < x2^-1 < ... (shorter prefix first); free abelian
	// groups compare exponent vectors lexicographically.
	bool word_less(Word const &a, Word const &b) const;
	std::string word_str(Word const &w) const;

	friend bool operator==(GroupSpec const &a, GroupSpec const &b);

  private:
	GroupSpec() = default;
	void init_lattice();

	GroupKind kind_ = GroupKind::free;
	int rank_ = 0;
	std::vector<Rational> xi_;
	std::optional<IntMatrix> phi_matrix_;
	std::optional<std::vector<Word>> phi_images_;
	std::shared_ptr<const TwistLattice> lattice_;
};

bool same_spec(SpecPtr const &a, SpecPtr const &b);

// ---- spec-level operations ---------------------------------------------

Word reduce(GroupSpec const &spec, std::span<const std::int32_t> raw);
Rational xi_value(GroupSpec const &spec, Word const &w);

enum class Twist { conjugacy, semiconjugacy };
enum class Exactness { exact, bounded };

// Canonical form of a (semi)conjugacy class. Equality compares the class
// identity only: canonical representative and twist.
struct ClassIndex
{
	SpecPtr spec;
	Word canonical;
	Twist twist = Twist::conjugacy;
	Exactness exactness = Exactness::exact;
	Rational xi;
	// free group, canonical != 1: canonical = root^root_power, root primitive
	Word root;
	std::int64_t root_power = 0;

	bool is_identity_class() const { return canonical.empty() || spec->is_identity(canonical); }

	friend bool operator==(ClassIndex const &a, ClassIndex const &b)
	{
		return a.twist == b.twist && a.canonical == b.canonical;
	}
};

// Deterministic container order for classes: raw word order.
struct ClassKeyLess
{
	bool operator()(ClassIndex const &a, ClassIndex const &b) const;
};

// Report order: descending xi, then the spec's word order.
bool class_report_less(ClassIndex const &a, ClassIndex const &b);

// A class together with a witness h for a specific member w:
//   canonical = phi(h^-1) * w * h     (phi = identity for conjugacy).
// For conjugacy on free groups also the decomposition w = p c p^-1 with c
// cyclically reduced and canonical the rotation of c starting at `rotation`.
struct ClassMembership
{
	ClassIndex cls;
	Word witness;
	Word cyclic_conjugator;
	std::size_t rotation = 0;
};

ClassMembership classify_conjugacy(SpecPtr const &spec, Word const &w);
ClassIndex conjugacy_class(SpecPtr const &spec, Word const &w);

// Requires phi. Exact for free abelian groups (via SNF of I - M); for free
// groups the class is returned uncanonicalized with exactness = bounded.
ClassMembership classify_semiconjugacy(SpecPtr const &spec, Word const &w);
ClassIndex semiconjugacy_class(SpecPtr const &spec, Word const &w);

// Conjugacy when the spec has no phi, semiconjugacy otherwise.
ClassMembership classify(SpecPtr const &spec, Word const &w);
ClassIndex class_of(SpecPtr const &spec, Word const &w);

enum class Verdict { yes, no, unknown };

struct SemiconjugacyAnswer
{
	Verdict verdict = Verdict::unknown;
	std::optional<Word> witness; // h with g1 = phi(h^-1) g2 h when verdict == yes
};

inline constexpr int default_search_bound = 8;

// Three-valued test g1 ~ g2. Free groups: exhaustive search over reduced h
// of length <= bound, with an exact "no" from the abelianized obstruction.
SemiconjugacyAnswer semiconjugate(SpecPtr const &spec, Word const &g1, Word const &g2,
                                  int bound = default_search_bound);

// Is w a member of cls? Throws std::runtime_error when the answer cannot be
// decided within the bound.
bool in_class(ClassIndex const &cls, Word const &w, int bound = default_search_bound);

// Coordinates of u in the abelianized (semi)centralizer of cls.canonical.
std::vector<std::int64_t> centralizer_exponent(ClassIndex const &cls, Word const &u);

} // namespace nzeta
