#include "nzeta/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nzeta {

namespace {

int letter_key(std::int32_t l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

// returns w with first/last letters cancelled pairwise: w = p c p^-1
std::pair<Word, Word> cyclic_reduction(Word const &w)
{
	std::size_t i = 0, j = w.size();
	while (j - i >= 2 && w[i] == -w[j - 1])
	{
		++i;
		--j;
	}
	Word::Storage p(w.begin(), w.begin() + i);
	Word::Storage c(w.begin() + i, w.begin() + j);
	return {Word(std::move(p)), Word(std::move(c))};
}

bool rotation_less(Word const &c, std::size_t r1, std::size_t r2)
{
	std::size_t n = c.size();
	for (std::size_t k = 0; k < n; ++k)
	{
		int a = letter_key(c[(r1 + k) % n]);
		int b = letter_key(c[(r2 + k) % n]);
		if (a != b)
			return a < b;
	}
	return false;
}

Word rotate(Word const &c, std::size_t r)
{
	Word::Storage s;
	s.reserve(c.size());
	for (std::size_t k = 0; k < c.size(); ++k)
		s.push_back(c[(r + k) % c.size()]);
	return Word(std::move(s));
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m)
{
	std::int64_t r = a % m;
	return r < 0 ? r + m : r;
}

} // namespace

// ---- GroupSpec -------------------------------------------------------------

SpecPtr GroupSpec::make_free(int rank, std::vector<Rational> xi, std::optional<std::vector<Word>> phi_images)
{
	if (rank < 1)
		throw std::invalid_argument("group rank must be at least 1");
	if (static_cast<int>(xi.size()) != rank)
		throw std::invalid_argument("xi must have one entry per generator");
	auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
	s->kind_ = GroupKind::free;
	s->rank_ = rank;
	s->xi_ = std::move(xi);
	if (phi_images)
	{
		if (static_cast<int>(phi_images->size()) != rank)
			throw std::invalid_argument("phi must give one image word per generator");
		for (auto const &img : *phi_images)
		{
			s->validate(img);
			if (!(s->reduce(std::span<const std::int32_t>(img.storage().data(), img.size())) == img))
				throw std::invalid_argument("phi image words must be freely reduced");
		}
		s->phi_images_ = std::move(phi_images);
		s->init_lattice();
	}
	return s;
}

SpecPtr GroupSpec::make_free_abelian(int rank, std::vector<Rational> xi, std::optional<IntMatrix> phi_matrix)
{
	if (rank < 1)
		throw std::invalid_argument("group rank must be at least 1");
	if (static_cast<int>(xi.size()) != rank)
		throw std::invalid_argument("xi must have one entry per generator");
	auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
	s->kind_ = GroupKind::free_abelian;
	s->rank_ = rank;
	s->xi_ = std::move(xi);
	if (phi_matrix)
	{
		auto n = static_cast<std::size_t>(rank);
		if (phi_matrix->rows() != n || phi_matrix->cols() != n)
			throw std::invalid_argument("phi must be a rank x rank integer matrix");
		s->phi_matrix_ = std::move(phi_matrix);
		s->init_lattice();
	}
	return s;
}

IntMatrix GroupSpec::abelian_phi() const
{
	auto n = static_cast<std::size_t>(rank_);
	if (phi_matrix_)
		return *phi_matrix_;
	IntMatrix m = IntMatrix::identity(n);
	if (phi_images_)
	{
		for (std::size_t j = 0; j < n; ++j)
		{
			auto col = exponent_sums((*phi_images_)[j]);
			for (std::size_t i = 0; i < n; ++i)
				m(i, j) = col[i];
		}
	}
	return m;
}

void GroupSpec::init_lattice()
{
	auto n = static_cast<std::size_t>(rank_);
	auto lat = std::make_shared<TwistLattice>();
	lat->shift = IntMatrix::identity(n) - abelian_phi();
	lat->smith = smith_normal_form(lat->shift);
	for (std::size_t i = lat->smith.rank; i < n; ++i)
	{
		std::vector<std::int64_t> col(n);
		for (std::size_t k = 0; k < n; ++k)
			col[k] = lat->smith.V(k, i);
		lat->kernel_basis.push_back(std::move(col));
	}
	lattice_ = std::move(lat);
}

Word GroupSpec::identity() const
{
	if (kind_ == GroupKind::free)
		return Word();
	return Word(Word::Storage(static_cast<std::size_t>(rank_), 0));
}

Word GroupSpec::generator(int i) const
{
	if (i < 1 || i > rank_)
		throw std::invalid_argument("generator index out of range");
	if (kind_ == GroupKind::free)
		return Word{i};
	Word w = identity();
	w[static_cast<std::size_t>(i - 1)] = 1;
	return w;
}

void GroupSpec::validate(Word const &w) const
{
	if (kind_ == GroupKind::free_abelian)
	{
		if (static_cast<int>(w.size()) != rank_)
			throw std::invalid_argument("word length " + std::to_string(w.size()) +
			                            " does not match rank " + std::to_string(rank_));
		return;
	}
	for (std::size_t i = 0; i < w.size(); ++i)
	{
		if (w[i] == 0 || std::abs(w[i]) > rank_)
			throw std::invalid_argument("generator index " + std::to_string(w[i]) + " out of range");
		if (i > 0 && w[i] == -w[i - 1])
			throw std::invalid_argument("word is not freely reduced");
	}
}

Word GroupSpec::reduce(std::span<const std::int32_t> raw) const
{
	if (kind_ == GroupKind::free_abelian)
	{
		Word w(Word::Storage(raw.begin(), raw.end()));
		validate(w);
		return w;
	}
	Word::Storage out;
	out.reserve(raw.size());
	for (auto l : raw)
	{
		if (l == 0 || std::abs(l) > rank_)
			throw std::invalid_argument("generator index " + std::to_string(l) + " out of range");
		if (!out.empty() && out.back() == -l)
			out.pop_back();
		else
			out.push_back(l);
	}
	return Word(std::move(out));
}

Word GroupSpec::mul(Word const &a, Word const &b) const
{
	if (kind_ == GroupKind::free_abelian)
	{
		Word r = a;
		for (std::size_t i = 0; i < r.size(); ++i)
			r[i] += b[i];
		return r;
	}
	std::size_t k = 0;
	while (k < a.size() && k < b.size() && a[a.size() - 1 - k] == -b[k])
		++k;
	Word::Storage s;
	s.reserve(a.size() + b.size() - 2 * k);
	s.insert(s.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(a.size() - k));
	s.insert(s.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
	return Word(std::move(s));
}

Word GroupSpec::inverse(Word const &a) const
{
	Word::Storage s;
	s.reserve(a.size());
	if (kind_ == GroupKind::free_abelian)
		for (auto l : a)
			s.push_back(-l);
	else
		for (std::size_t i = a.size(); i-- > 0;)
			s.push_back(-a[i]);
	return Word(std::move(s));
}

Word GroupSpec::power(Word const &a, std::int64_t k) const
{
	Word base = k < 0 ? inverse(a) : a;
	Word r = identity();
	for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i)
		r = mul(r, base);
	return r;
}

Word GroupSpec::apply_phi(Word const &a) const
{
	if (phi_matrix_)
	{
		auto v = phi_matrix_->apply(a.to_vector());
		Word::Storage s;
		for (auto x : v)
		{
			if (x < INT32_MIN || x > INT32_MAX)
				throw std::overflow_error("exponent overflow applying phi");
			s.push_back(static_cast<std::int32_t>(x));
		}
		return Word(std::move(s));
	}
	if (phi_images_)
	{
		Word r;
		for (auto l : a)
		{
			Word const &img = (*phi_images_)[static_cast<std::size_t>(std::abs(l) - 1)];
			r = mul(r, l > 0 ? img : inverse(img));
		}
		return r;
	}
	return a;
}

bool GroupSpec::is_identity(Word const &a) const
{
	if (kind_ == GroupKind::free)
		return a.empty();
	return std::all_of(a.begin(), a.end(), [](std::int32_t l) { return l == 0; });
}

Rational GroupSpec::xi_value(Word const &w) const
{
	Rational r;
	if (kind_ == GroupKind::free_abelian)
	{
		for (std::size_t i = 0; i < w.size(); ++i)
			if (w[i] != 0)
				r += xi_[i] * Rational(w[i]);
		return r;
	}
	for (auto l : w)
	{
		if (l > 0)
			r += xi_[static_cast<std::size_t>(l - 1)];
		else
			r -= xi_[static_cast<std::size_t>(-l - 1)];
	}
	return r;
}

std::vector<std::int64_t> GroupSpec::exponent_sums(Word const &w) const
{
	if (kind_ == GroupKind::free_abelian)
		return w.to_vector();
	std::vector<std::int64_t> v(static_cast<std::size_t>(rank_), 0);
	for (auto l : w)
		v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
	return v;
}

Rational GroupSpec::xi_image_generator() const
{
	std::int64_t l = 1;
	for (auto const &x : xi_)
		l = std::lcm(l, x.den());
	std::int64_t g = 0;
	for (auto const &x : xi_)
		g = std::gcd(g, (x * Rational(l)).num());
	return Rational(g, l);
}

SpecPtr GroupSpec::abelianization() const
{
	std::optional<IntMatrix> m;
	if (has_phi())
		m = abelian_phi();
	return make_free_abelian(rank_, xi_, std::move(m));
}

bool GroupSpec::word_less(Word const &a, Word const &b) const
{
	if (kind_ == GroupKind::free_abelian)
		return a < b;
	return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
	                                    [](std::int32_t x, std::int32_t y) { return letter_key(x) < letter_key(y); });
}

std::string GroupSpec::word_str(Word const &w) const
{
	std::ostringstream os;
	bool first = true;
	auto emit = [&](int gen, std::int64_t e) {
		if (!first)
			os << ' ';
		first = false;
		os << 'x' << gen;
		if (e != 1)
			os << '^' << e;
	};
	if (kind_ == GroupKind::free_abelian)
	{
		for (std::size_t i = 0; i < w.size(); ++i)
			if (w[i] != 0)
				emit(static_cast<int>(i + 1), w[i]);
	}
	else
	{
		// collapse runs of equal letters
		for (std::size_t i = 0; i < w.size();)
		{
			std::size_t j = i;
			while (j < w.size() && w[j] == w[i])
				++j;
			auto run = static_cast<std::int64_t>(j - i);
			emit(std::abs(w[i]), w[i] > 0 ? run : -run);
			i = j;
		}
	}
	if (first)
		return "1";
	return os.str();
}

bool operator==(GroupSpec const &a, GroupSpec const &b)
{
	return a.kind_ == b.kind_ && a.rank_ == b.rank_ && a.xi_ == b.xi_ && a.phi_matrix_ == b.phi_matrix_ &&
	       a.phi_images_ == b.phi_images_;
}

bool same_spec(SpecPtr const &a, SpecPtr const &b) { return a == b || (a && b && *a == *b); }

Word reduce(GroupSpec const &spec, std::span<const std::int32_t> raw) { return spec.reduce(raw); }
Rational xi_value(GroupSpec const &spec, Word const &w) { return spec.xi_value(w); }

// ---- classes ---------------------------------------------------------------

bool ClassKeyLess::operator()(ClassIndex const &a, ClassIndex const &b) const
{
	if (a.twist != b.twist)
		return a.twist < b.twist;
	return a.canonical < b.canonical;
}

bool class_report_less(ClassIndex const &a, ClassIndex const &b)
{
	if (a.xi != b.xi)
		return a.xi > b.xi;
	if (!(a.canonical == b.canonical))
		return a.spec->word_less(a.canonical, b.canonical);
	return a.twist < b.twist;
}

ClassMembership classify_conjugacy(SpecPtr const &spec, Word const &w)
{
	if (spec->has_phi())
		throw std::invalid_argument("conjugacy classes require phi = identity");
	ClassMembership m;
	m.cls.spec = spec;
	m.cls.twist = Twist::conjugacy;
	m.cls.exactness = Exactness::exact;
	m.witness = spec->identity();
	if (spec->kind() == GroupKind::free_abelian)
	{
		m.cls.canonical = w;
		m.cls.xi = spec->xi_value(w);
		m.cyclic_conjugator = spec->identity();
		return m;
	}
	auto [p, c] = cyclic_reduction(w);
	m.cyclic_conjugator = p;
	if (c.empty())
	{
		m.cls.xi = Rational(0);
		return m;
	}
	std::size_t best = 0;
	for (std::size_t r = 1; r < c.size(); ++r)
		if (rotation_less(c, r, best))
			best = r;
	m.rotation = best;
	m.cls.canonical = rotate(c, best);
	m.cls.xi = spec->xi_value(m.cls.canonical);
	// c = u v with canonical = v u, so w = p u canonical u^-1 p^-1
	Word u(Word::Storage(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(best)));
	m.witness = spec->mul(p, u);

	auto const &can = m.cls.canonical;
	std::size_t n = can.size();
	for (std::size_t d = 1; d <= n; ++d)
	{
		if (n % d != 0)
			continue;
		bool periodic = true;
		for (std::size_t k = d; k < n && periodic; ++k)
			periodic = can[k] == can[k - d];
		if (periodic)
		{
			m.cls.root = Word(Word::Storage(can.begin(), can.begin() + static_cast<std::ptrdiff_t>(d)));
			m.cls.root_power = static_cast<std::int64_t>(n / d);
			break;
		}
	}
	return m;
}

ClassIndex conjugacy_class(SpecPtr const &spec, Word const &w) { return classify_conjugacy(spec, w).cls; }

ClassMembership classify_semiconjugacy(SpecPtr const &spec, Word const &w)
{
	if (!spec->has_phi())
		throw std::invalid_argument("semiconjugacy classes require an endomorphism phi");
	ClassMembership m;
	m.cls.spec = spec;
	m.cls.twist = Twist::semiconjugacy;
	m.cyclic_conjugator = spec->identity();
	if (spec->kind() == GroupKind::free)
	{
		m.cls.exactness = Exactness::bounded;
		m.cls.canonical = w;
		m.cls.xi = spec->xi_value(w);
		m.witness = spec->identity();
		return m;
	}
	m.cls.exactness = Exactness::exact;
	auto const &lat = *spec->twist_lattice();
	auto const &f = lat.smith;
	std::size_t n = static_cast<std::size_t>(spec->rank());
	auto y = f.U.apply(w.to_vector());
	std::vector<std::int64_t> yr(n), q(n, 0);
	for (std::size_t i = 0; i < n; ++i)
	{
		if (i < f.rank)
		{
			yr[i] = floor_mod(y[i], f.diagonal[i]);
			q[i] = (y[i] - yr[i]) / f.diagonal[i];
		}
		else
			yr[i] = y[i];
	}
	auto can = f.U_inv.apply(yr);
	auto h = f.V.apply(q);
	Word::Storage cs, hs;
	for (std::size_t i = 0; i < n; ++i)
	{
		cs.push_back(static_cast<std::int32_t>(can[i]));
		hs.push_back(static_cast<std::int32_t>(-h[i]));
	}
	m.cls.canonical = Word(std::move(cs));
	m.cls.xi = spec->xi_value(m.cls.canonical);
	m.witness = Word(std::move(hs));
	if (!(spec->mul(spec->inverse(spec->apply_phi(m.witness)), w, m.witness) == m.cls.canonical))
		throw std::logic_error("semiconjugacy witness check failed");
	return m;
}

ClassIndex semiconjugacy_class(SpecPtr const &spec, Word const &w) { return classify_semiconjugacy(spec, w).cls; }

ClassMembership classify(SpecPtr const &spec, Word const &w)
{
	return spec->has_phi() ? classify_semiconjugacy(spec, w) : classify_conjugacy(spec, w);
}

ClassIndex class_of(SpecPtr const &spec, Word const &w) { return classify(spec, w).cls; }

SemiconjugacyAnswer semiconjugate(SpecPtr const &spec, Word const &g1, Word const &g2, int bound)
{
	SemiconjugacyAnswer ans;
	if (!spec->has_phi())
	{
		bool same = conjugacy_class(spec, g1) == conjugacy_class(spec, g2);
		ans.verdict = same ? Verdict::yes : Verdict::no;
		if (same)
		{
			// canonical = h1^-1 g1 h1 = h2^-1 g2 h2  =>  g1 = (h2 h1^-1)^-1 g2 (h2 h1^-1)
			auto m1 = classify_conjugacy(spec, g1), m2 = classify_conjugacy(spec, g2);
			ans.witness = spec->mul(m2.witness, spec->inverse(m1.witness));
		}
		return ans;
	}
	if (spec->kind() == GroupKind::free_abelian)
	{
		auto m1 = classify_semiconjugacy(spec, g1), m2 = classify_semiconjugacy(spec, g2);
		bool same = m1.cls == m2.cls;
		ans.verdict = same ? Verdict::yes : Verdict::no;
		if (same)
			ans.witness = spec->mul(m2.witness, spec->inverse(m1.witness));
		return ans;
	}
	// abelianized obstruction: g1 - g2 must lie in the image of I - M_ab
	{
		auto const &lat = *spec->twist_lattice();
		auto a = spec->exponent_sums(g1), b = spec->exponent_sums(g2);
		for (std::size_t i = 0; i < a.size(); ++i)
			a[i] -= b[i];
		auto y = lat.smith.U.apply(a);
		for (std::size_t i = 0; i < y.size(); ++i)
		{
			bool ok = i < lat.smith.rank ? y[i] % lat.smith.diagonal[i] == 0 : y[i] == 0;
			if (!ok)
			{
				ans.verdict = Verdict::no;
				return ans;
			}
		}
	}
	// breadth-first over reduced words of length <= bound
	std::vector<Word> frontier{Word()};
	for (int len = 0; len <= bound; ++len)
	{
		std::vector<Word> next;
		for (auto const &h : frontier)
		{
			if (spec->mul(spec->inverse(spec->apply_phi(h)), g2, h) == g1)
			{
				ans.verdict = Verdict::yes;
				ans.witness = h;
				return ans;
			}
			if (len == bound)
				continue;
			for (int g = 1; g <= spec->rank(); ++g)
				for (int s : {g, -g})
				{
					if (!h.empty() && h[h.size() - 1] == -s)
						continue;
					Word e = h;
					e.storage().push_back(s);
					next.push_back(std::move(e));
				}
		}
		frontier = std::move(next);
	}
	ans.verdict = Verdict::unknown;
	return ans;
}

bool in_class(ClassIndex const &cls, Word const &w, int bound)
{
	if (cls.exactness == Exactness::exact)
		return class_of(cls.spec, w) == cls;
	auto ans = semiconjugate(cls.spec, w, cls.canonical, bound);
	if (ans.verdict == Verdict::unknown)
		throw std::runtime_error("semiconjugacy of " + cls.spec->word_str(w) + " and " +
		                         cls.spec->word_str(cls.canonical) + " undecided within bound " +
		                         std::to_string(bound));
	return ans.verdict == Verdict::yes;
}

std::vector<std::int64_t> centralizer_exponent(ClassIndex const &cls, Word const &u)
{
	auto const &spec = *cls.spec;
	auto const &c = cls.canonical;
	if (cls.twist == Twist::semiconjugacy)
	{
		if (cls.exactness != Exactness::exact)
			throw std::runtime_error("semicentralizers are not computed for twisted free groups");
		if (!(spec.mul(spec.inverse(spec.apply_phi(u)), c, u) == c))
			throw std::invalid_argument("element is not in the semicentralizer");
		auto const &lat = *spec.twist_lattice();
		auto z = lat.smith.V_inv.apply(u.to_vector());
		return std::vector<std::int64_t>(z.begin() + static_cast<std::ptrdiff_t>(lat.smith.rank), z.end());
	}
	if (spec.kind() == GroupKind::free_abelian)
		return u.to_vector();
	if (c.empty())
		return spec.exponent_sums(u);
	if (!(spec.mul(u, c) == spec.mul(c, u)))
		throw std::invalid_argument("element is not in the centralizer");
	if (u.empty())
		return {0};
	auto const &r = cls.root;
	if (u.size() % r.size() == 0)
	{
		auto m = static_cast<std::int64_t>(u.size() / r.size());
		if (spec.power(r, m) == u)
			return {m};
		if (spec.power(r, -m) == u)
			return {-m};
	}
	throw std::logic_error("centralizer element is not a power of the primitive root");
}

} // namespace nzeta
