#pragma once

#include "nzeta/hochschild.hpp"
#include "nzeta/novikov.hpp"

#include <utility>
#include <vector>

namespace nzeta {

// A closed orbit of -v: the class of [gamma]^multiplicity with its Lefschetz sign.
struct OrbitRecord
{
	Word primitive;
	std::int64_t multiplicity = 1;
	int sign = 1;

	friend bool operator==(OrbitRecord const &, OrbitRecord const &) = default;
};

// A completed chain together with its per-class homology values.
struct ZetaResult
{
	CompletedChain1 chain;
	std::vector<HH1ClassValue> classes; // report order
	Level cutoff;

	HH1ClassValue const *find(ClassIndex const &cls) const;
};

// Extracts every class of a completed chain.
ZetaResult finalize(CompletedChain1 chain);

// (-1)^{sign_exponent} * DT(tau(I - A)) = -(-1)^{sign_exponent} sum_{k>=1} trace(A^{k-1} (x) A),
// kept on classes with xi > cutoff.
ZetaResult dennis_trace_unit(TorsionUnit const &u, Rational const &cutoff);

using IndexedMatrix = std::pair<std::int64_t, GRMatrix>;

// sum_i (-1)^{i+1} DT(tau(I - A_i)) per eq (torsion).
ZetaResult zeta_from_matrices(SpecPtr const &spec, std::vector<IndexedMatrix> const &as, Rational const &cutoff);

// sum of sign * (w^{m-1} (x) w) at the classes gamma(w^m) above the cutoff.
ZetaResult nielsen_fuller(SpecPtr const &spec, std::vector<OrbitRecord> const &orbits, Rational const &cutoff);

// eta = l(zeta).
EtaSeries eta(ZetaResult const &z);
// eta(gamma) = sum of sign/multiplicity over the records in gamma.
EtaSeries eta_from_orbits(SpecPtr const &spec, std::vector<OrbitRecord> const &orbits, Rational const &cutoff);

// epsilon(eta): push classes to H_1 and sum; a rational series over the abelianization.
NovikovSeries abelianize_eta(SpecPtr const &spec, EtaSeries const &e, Rational const &cutoff);
// exp(epsilon(eta(z))) above the cutoff.
NovikovSeries commutative_zeta(ZetaResult const &z, Rational const &cutoff);
// prod_i det(I - epsilon(A_i))^{(-1)^{i+1}} above the cutoff (Corollary cmtheo).
NovikovSeries commutative_zeta_determinant(SpecPtr const &spec, std::vector<IndexedMatrix> const &as,
                                           Rational const &cutoff);

// The chain over Q, re-extracted.
ZetaResult rational_zeta(ZetaResult const &z);
// Classes where the Q-extraction of zeta differs from that of e(eta).
std::vector<ClassIndex> rational_zeta_mismatches(ZetaResult const &z);

// p^dagger_S(trace(D (x) bnd)) with S = excluded; every retained class must be a cycle.
// `bound` is the conjugator search bound for search-bounded (twisted free) classes.
ZetaResult one_parameter_trace(GRMatrix const &d, GRMatrix const &bnd, std::vector<ClassIndex> const &excluded,
                               int bound = default_search_bound);

// Closed orbits of the suspension flow of a monomial matrix (entries 0 or
// c*g with xi(g) < 0; |c| parallel edges of sign sgn(c)) with xi above the
// cutoff. Signs include (-1)^{dimension_index}.
std::vector<OrbitRecord> enumerate_orbits_monomial(GRMatrix const &a, Rational const &cutoff,
                                                   std::int64_t dimension_index = 0);

// Classes above max(cutoffs) whose values differ (missing = 0).
std::vector<ClassIndex> compare_results(ZetaResult const &a, ZetaResult const &b);
// Same for eta maps.
std::vector<ClassIndex> compare_eta(EtaSeries const &a, EtaSeries const &b);

} // namespace nzeta
