#include "nzeta/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace nzeta {

namespace {

using wide = __int128;

wide wide_gcd(wide a, wide b)
{
	if (a < 0)
		a = -a;
	if (b < 0)
		b = -b;
	while (b != 0)
	{
		wide t = a % b;
		a = b;
		b = t;
	}
	return a;
}

bool fits(wide v)
{
	return v >= std::numeric_limits<std::int64_t>::min() &&
	       v <= std::numeric_limits<std::int64_t>::max();
}

[[noreturn]] void overflow() { throw std::overflow_error("rational arithmetic overflow"); }

std::int64_t add_checked(std::int64_t a, std::int64_t b)
{
	std::int64_t r;
	if (__builtin_add_overflow(a, b, &r))
		overflow();
	return r;
}

std::int64_t sub_checked(std::int64_t a, std::int64_t b)
{
	std::int64_t r;
	if (__builtin_sub_overflow(a, b, &r))
		overflow();
	return r;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d)
{
	if (d == 0)
		throw std::domain_error("rational with zero denominator");
	*this = from_wide(n, d);
}

Rational Rational::from_wide(wide n, wide d)
{
	if (d < 0)
	{
		n = -n;
		d = -d;
	}
	wide g = wide_gcd(n, d);
	if (g > 1)
	{
		n /= g;
		d /= g;
	}
	if (n == 0)
		d = 1;
	if (!fits(n) || !fits(d))
		overflow();
	Rational r;
	r.num_ = static_cast<std::int64_t>(n);
	r.den_ = static_cast<std::int64_t>(d);
	return r;
}

Rational Rational::operator-() const
{
	if (num_ == std::numeric_limits<std::int64_t>::min())
		overflow();
	Rational r = *this;
	r.num_ = -num_;
	return r;
}

Rational &Rational::operator+=(Rational const &o)
{
	if (den_ == 1 && o.den_ == 1)
	{
		num_ = add_checked(num_, o.num_);
		return *this;
	}
	*this = from_wide(wide(num_) * o.den_ + wide(o.num_) * den_, wide(den_) * o.den_);
	return *this;
}

Rational &Rational::operator-=(Rational const &o)
{
	if (den_ == 1 && o.den_ == 1)
	{
		num_ = sub_checked(num_, o.num_);
		return *this;
	}
	*this = from_wide(wide(num_) * o.den_ - wide(o.num_) * den_, wide(den_) * o.den_);
	return *this;
}

Rational &Rational::operator*=(Rational const &o)
{
	if (den_ == 1 && o.den_ == 1)
	{
		std::int64_t r;
		if (__builtin_mul_overflow(num_, o.num_, &r))
			overflow();
		num_ = r;
		return *this;
	}
	*this = from_wide(wide(num_) * o.num_, wide(den_) * o.den_);
	return *this;
}

Rational &Rational::operator/=(Rational const &o)
{
	if (o.num_ == 0)
		throw std::domain_error("rational division by zero");
	*this = from_wide(wide(num_) * o.den_, wide(den_) * o.num_);
	return *this;
}

std::strong_ordering operator<=>(Rational const &a, Rational const &b)
{
	wide l = wide(a.num_) * b.den_;
	wide r = wide(b.num_) * a.den_;
	return l <=> r;
}

std::string Rational::str() const
{
	if (den_ == 1)
		return std::to_string(num_);
	return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view s)
{
	auto bad = [&]() -> Rational {
		throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
	};
	auto parse_int = [&](std::string_view t, bool allow_sign) -> std::int64_t {
		if (t.empty())
			bad();
		if (!allow_sign && (t[0] == '-' || t[0] == '+'))
			bad();
		if (t[0] == '+')
			t.remove_prefix(1);
		std::int64_t v = 0;
		auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
		if (ec == std::errc::result_out_of_range)
			overflow();
		if (ec != std::errc() || ptr != t.data() + t.size())
			bad();
		return v;
	};
	auto slash = s.find('/');
	if (slash == std::string_view::npos)
		return Rational(parse_int(s, true));
	std::int64_t n = parse_int(s.substr(0, slash), true);
	std::int64_t d = parse_int(s.substr(slash + 1), false);
	if (d == 0)
		throw std::invalid_argument("rational '" + std::string(s) + "' has zero denominator");
	return Rational(n, d);
}

std::ostream &operator<<(std::ostream &os, Rational const &r) { return os << r.str(); }

Rational const &Level::value() const
{
	if (!finite_)
		throw std::logic_error("value() of -inf level");
	return value_;
}

bool operator==(Level const &a, Level const &b)
{
	if (a.finite_ != b.finite_)
		return false;
	return !a.finite_ || a.value_ == b.value_;
}

std::strong_ordering operator<=>(Level const &a, Level const &b)
{
	if (!a.finite_ || !b.finite_)
		return a.finite_ <=> b.finite_;
	return a.value_ <=> b.value_;
}

Level operator+(Level const &a, Level const &b)
{
	if (!a.finite_ || !b.finite_)
		return Level();
	return Level(a.value_ + b.value_);
}

Level operator*(std::int64_t k, Level const &a)
{
	if (k <= 0)
		throw std::invalid_argument("level scaling needs a positive factor");
	if (!a.finite_)
		return a;
	return Level(Rational(k) * a.value_);
}

std::string Level::str() const { return finite_ ? value_.str() : std::string("-inf"); }

Level max(Level const &a, Level const &b) { return a < b ? b : a; }
Level min(Level const &a, Level const &b) { return a < b ? a : b; }

std::ostream &operator<<(std::ostream &os, Level const &l) { return os << l.str(); }

} // namespace nzeta
