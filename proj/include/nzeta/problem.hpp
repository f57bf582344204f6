#pragma once

#include "nzeta/zeta.hpp"

#include <json.hpp> // vendored nlohmann::json

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nzeta {

// The one-parameter trace input: matrices D and bnd plus the excluded end
// classes, given by representative words.
struct OneParameterInput
{
	GRMatrix d;
	GRMatrix bnd;
	std::vector<Word> excluded;

	friend bool operator==(OneParameterInput const &, OneParameterInput const &) = default;
};

// A problem file (the ProblemFile type of the cli module).
struct Problem
{
	SpecPtr group;
	Rational cutoff;
	std::optional<std::vector<IndexedMatrix>> matrices;
	std::optional<std::vector<OrbitRecord>> orbits;
	std::optional<OneParameterInput> one_parameter;

	friend bool operator==(Problem const &a, Problem const &b)
	{
		return same_spec(a.group, b.group) && a.cutoff == b.cutoff && a.matrices == b.matrices &&
		       a.orbits == b.orbits && a.one_parameter == b.one_parameter;
	}
};

// A parse or validation failure. `where` is a JSON pointer to the offending
// field, or "line L, column C" for syntax errors.
class ProblemError : public std::runtime_error
{
  public:
	ProblemError(std::string where, std::string what)
	    : std::runtime_error(where + ": " + what), where_(std::move(where))
	{
	}
	std::string const &where() const { return where_; }

  private:
	std::string where_;
};

// Validates the ProblemFile invariants: a supported group, cutoff < 0, at least
// one of matrices/orbits/one_parameter, valid words, square matrices.
Problem parse_problem(nlohmann::json const &j);
Problem parse_problem_text(std::string const &text);

// Canonical form: reduced words, merged and sorted terms, rationals as "p/q".
nlohmann::json serialize_problem(Problem const &p);

// Shared encodings, also used by the reports.
nlohmann::json word_json(Word const &w);
nlohmann::json element_json(GroupRingElem const &e);
nlohmann::json class_json(ClassIndex const &c);

} // namespace nzeta
