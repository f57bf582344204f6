#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nzeta {

// Exact rational over 64-bit integers. All intermediate products are formed
// in 128 bits; a result that does not fit throws std::overflow_error, so an
// answer is either exact or absent.
class Rational
{
  public:
	constexpr Rational() = default;
	constexpr Rational(std::int64_t n) : num_(n) {}
	Rational(std::int64_t n, std::int64_t d);

	std::int64_t num() const { return num_; }
	std::int64_t den() const { return den_; }
	bool is_integer() const { return den_ == 1; }
	bool is_zero() const { return num_ == 0; }
	int sign() const { return (num_ > 0) - (num_ < 0); }

	Rational operator-() const;
	Rational &operator+=(Rational const &o);
	Rational &operator-=(Rational const &o);
	Rational &operator*=(Rational const &o);
	Rational &operator/=(Rational const &o);

	friend Rational operator+(Rational a, Rational const &b) { return a += b; }
	friend Rational operator-(Rational a, Rational const &b) { return a -= b; }
	friend Rational operator*(Rational a, Rational const &b) { return a *= b; }
	friend Rational operator/(Rational a, Rational const &b) { return a /= b; }

	friend bool operator==(Rational const &, Rational const &) = default;
	friend std::strong_ordering operator<=>(Rational const &a, Rational const &b);

	// "p" for integers, otherwise "p/q" with q > 0 and gcd(p, q) = 1.
	std::string str() const;
	// Accepts "p", "p/q", optional leading sign; rejects anything else.
	static Rational parse(std::string_view s);

  private:
	static Rational from_wide(__int128 n, __int128 d);

	std::int64_t num_ = 0;
	std::int64_t den_ = 1;
};

std::ostream &operator<<(std::ostream &os, Rational const &r);

// Rational extended by -infinity. Used for xi-degrees of elements (the degree
// of 0 is -inf) and for cutoffs (an exact element has cutoff -inf).
class Level
{
  public:
	constexpr Level() = default; // -inf
	Level(Rational v) : finite_(true), value_(v) {}
	Level(std::int64_t v) : finite_(true), value_(v) {}

	static Level neg_inf() { return Level(); }

	bool is_finite() const { return finite_; }
	bool is_neg_inf() const { return !finite_; }
	Rational const &value() const;

	friend bool operator==(Level const &a, Level const &b);
	friend std::strong_ordering operator<=>(Level const &a, Level const &b);

	// -inf is absorbing.
	friend Level operator+(Level const &a, Level const &b);
	// Multiplication by a positive integer.
	friend Level operator*(std::int64_t k, Level const &a);

	std::string str() const;

  private:
	bool finite_ = false;
	Rational value_;
};

Level max(Level const &a, Level const &b);
Level min(Level const &a, Level const &b);

std::ostream &operator<<(std::ostream &os, Level const &l);

} // namespace nzeta
