#include "nzeta/hochschild.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace nzeta {

// ---- Chain<N> ------------------------------------------------------------------

template <std::size_t N> Chain<N> Chain<N>::from_terms(SpecPtr spec, CoeffRing ring, std::vector<Term> terms)
{
	Chain c(std::move(spec), ring);
	for (auto const &t : terms)
		for (auto const &w : t.first)
			c.spec_->validate(w);
	c.terms_ = std::move(terms);
	c.normalize();
	return c;
}

template <std::size_t N> void Chain<N>::normalize()
{
	if (ring_ == CoeffRing::integer)
		for (auto const &t : terms_)
			if (!t.second.is_integer())
				throw std::invalid_argument("non-integer coefficient in an integral chain");
	std::sort(terms_.begin(), terms_.end(), [](Term const &x, Term const &y) { return x.first < y.first; });
	std::size_t out = 0;
	for (std::size_t i = 0; i < terms_.size();)
	{
		std::size_t j = i + 1;
		Rational c = terms_[i].second;
		while (j < terms_.size() && terms_[j].first == terms_[i].first)
			c += terms_[j++].second;
		if (!c.is_zero())
		{
			if (out != i)
				terms_[out].first = std::move(terms_[i].first);
			terms_[out].second = c;
			++out;
		}
		i = j;
	}
	terms_.resize(out);
}

template <std::size_t N> void Chain<N>::check_compatible(Chain const &o) const
{
	if (!same_spec(spec_, o.spec_))
		throw std::invalid_argument("chains over different groups");
	if (ring_ != o.ring_)
		throw std::invalid_argument("chains over different coefficient rings");
}

template <std::size_t N> Word Chain<N>::product(Key const &k) const
{
	Word w = k[0];
	for (std::size_t i = 1; i < N; ++i)
		w = spec_->mul(w, k[i]);
	return w;
}

template <std::size_t N> Chain<N> Chain<N>::operator-() const
{
	Chain r = *this;
	for (auto &t : r.terms_)
		t.second = -t.second;
	return r;
}

template <std::size_t N> Chain<N> &Chain<N>::operator+=(Chain const &o)
{
	if (!spec_)
	{
		*this = o;
		return *this;
	}
	if (!o.spec_)
		return *this;
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

template <std::size_t N> std::vector<typename Chain<N>::Term> Chain<N>::report_terms() const
{
	auto t = terms_;
	std::stable_sort(t.begin(), t.end(), [&](Term const &x, Term const &y) {
		auto a = spec_->xi_value(product(x.first)), b = spec_->xi_value(product(y.first));
		if (a != b)
			return a > b;
		for (std::size_t i = 0; i < N; ++i)
		{
			if (spec_->word_less(x.first[i], y.first[i]))
				return true;
			if (spec_->word_less(y.first[i], x.first[i]))
				return false;
		}
		return false;
	});
	return t;
}

template <std::size_t N> std::string Chain<N>::str() const
{
	if (terms_.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (auto const &[k, c] : report_terms())
	{
		Rational mag = c.sign() < 0 ? -c : c;
		if (first)
			os << (c.sign() < 0 ? "-" : "");
		else
			os << (c.sign() < 0 ? " - " : " + ");
		first = false;
		if (!(mag == Rational(1)))
			os << mag.str() << "*";
		os << "(";
		for (std::size_t i = 0; i < N; ++i)
			os << (i ? " ⊗ " : "") << spec_->word_str(k[i]);
		os << ")";
	}
	return os.str();
}

template class Chain<2>;
template class Chain<3>;

// ---- tensors and boundaries ------------------------------------------------------

Chain1 tensor(GroupRingElem const &a, GroupRingElem const &b)
{
	if (!same_spec(a.spec(), b.spec()) || a.ring() != b.ring())
		throw std::invalid_argument("tensor of elements over different rings");
	Chain1 r(a.spec(), a.ring());
	for (auto const &[x, c] : a.terms())
		for (auto const &[y, d] : b.terms())
			r.push({x, y}, c * d);
	r.normalize();
	return r;
}

Chain2 tensor(Chain1 const &a, GroupRingElem const &b)
{
	if (!same_spec(a.spec(), b.spec()) || a.ring() != b.ring())
		throw std::invalid_argument("tensor of chains over different rings");
	Chain2 r(a.spec(), a.ring());
	for (auto const &[k, c] : a.terms())
		for (auto const &[y, d] : b.terms())
			r.push({k[0], k[1], y}, c * d);
	r.normalize();
	return r;
}

GroupRingElem boundary1(Chain1 const &c)
{
	auto const &spec = *c.spec();
	std::vector<GroupRingElem::Term> t;
	t.reserve(2 * c.size());
	for (auto const &[k, q] : c.terms())
	{
		t.emplace_back(spec.mul(k[0], k[1]), q);
		t.emplace_back(spec.mul(spec.apply_phi(k[1]), k[0]), -q);
	}
	return GroupRingElem::from_terms(c.spec(), c.ring(), std::move(t));
}

Chain1 boundary2(Chain2 const &c)
{
	auto const &spec = *c.spec();
	Chain1 r(c.spec(), c.ring());
	for (auto const &[k, q] : c.terms())
	{
		r.push({spec.mul(k[0], k[1]), k[2]}, q);
		r.push({k[0], spec.mul(k[1], k[2])}, -q);
		r.push({spec.mul(spec.apply_phi(k[2]), k[0]), k[1]}, q);
	}
	r.normalize();
	return r;
}

// ---- classes -----------------------------------------------------------------------

namespace {

bool member(ClassIndex const &cls, Word const &w, int bound)
{
	if (cls.exactness == Exactness::exact)
		return class_of(cls.spec, w) == cls;
	return in_class(cls, w, bound);
}

// Finds the key of the class containing w (member test for bounded classes).
template <class Map> typename Map::iterator find_class(Map &m, ClassIndex const &cls, int bound)
{
	if (cls.exactness == Exactness::exact)
		return m.find(cls);
	for (auto it = m.begin(); it != m.end(); ++it)
		if (it->first.twist == cls.twist && in_class(it->first, cls.canonical, bound))
			return it;
	return m.end();
}

template <std::size_t N> Chain<N> project_impl(Chain<N> const &c, ClassIndex const &cls, int bound)
{
	Chain<N> r(c.spec(), c.ring());
	for (auto const &[k, q] : c.terms())
		if (member(cls, c.product(k), bound))
			r.push(k, q);
	return r; // a subsequence of a normalized chain is normalized
}

} // namespace

Chain1 project_class(Chain1 const &c, ClassIndex const &cls, int bound) { return project_impl(c, cls, bound); }
Chain2 project_class(Chain2 const &c, ClassIndex const &cls, int bound) { return project_impl(c, cls, bound); }

ClassChains decompose(Chain1 const &c, int bound)
{
	ClassChains out;
	for (auto const &[k, q] : c.terms())
	{
		auto cls = class_of(c.spec(), c.product(k));
		auto it = find_class(out, cls, bound);
		if (it == out.end())
			it = out.emplace(cls, Chain1(c.spec(), c.ring())).first;
		it->second.push(k, q);
	}
	return out;
}

Chain1 trace_tensor(GRMatrix const &a, GRMatrix const &b)
{
	if (a.rows() != b.cols() || a.cols() != b.rows())
		throw std::invalid_argument("trace_tensor: shapes must be n x k and k x n");
	if (a.rows() == 0 || a.cols() == 0)
		throw std::invalid_argument("trace_tensor: empty matrices");
	Chain1 r(a(0, 0).spec(), a(0, 0).ring());
	for (std::size_t l = 0; l < a.rows(); ++l)
		for (std::size_t m = 0; m < a.cols(); ++m)
			r += tensor(a(l, m), b(m, l));
	return r;
}

Chain2 trace_tensor(Matrix<Chain1> const &a, GRMatrix const &b)
{
	if (a.rows() != b.cols() || a.cols() != b.rows())
		throw std::invalid_argument("trace_tensor: shapes must be n x k and k x n");
	if (a.rows() == 0 || a.cols() == 0)
		throw std::invalid_argument("trace_tensor: empty matrices");
	Chain2 r(b(0, 0).spec(), b(0, 0).ring());
	for (std::size_t l = 0; l < a.rows(); ++l)
		for (std::size_t m = 0; m < a.cols(); ++m)
			r += tensor(a(l, m), b(m, l));
	return r;
}

// ---- extraction -----------------------------------------------------------------------

bool HH1ClassValue::is_zero() const
{
	return std::all_of(value.begin(), value.end(), [](Rational const &r) { return r.is_zero(); });
}

std::string HH1ClassValue::str() const
{
	if (cyclic && value.size() == 1)
		return value[0].str();
	std::string s = "(";
	for (std::size_t i = 0; i < value.size(); ++i)
		s += (i ? ", " : "") + value[i].str();
	return s + ")";
}

std::size_t class_value_dimension(ClassIndex const &cls)
{
	auto const &spec = *cls.spec;
	if (cls.twist == Twist::semiconjugacy)
	{
		if (cls.exactness != Exactness::exact)
			throw std::runtime_error("semicentralizers are not computed for twisted free groups");
		return static_cast<std::size_t>(spec.rank()) - spec.twist_lattice()->smith.rank;
	}
	if (spec.kind() == GroupKind::free && !cls.is_identity_class())
		return 1;
	return static_cast<std::size_t>(spec.rank());
}

HH1ClassValue extract_class_value(Chain1 const &z, ClassIndex const &cls, ExtractionMode const &mode)
{
	if (cls.exactness != Exactness::exact)
		throw std::runtime_error("class extraction needs an exactly canonicalized class");
	return extract_in_class(z.spec() ? project_class(z, cls) : Chain1(cls.spec, z.ring()), cls, mode);
}

HH1ClassValue extract_in_class(Chain1 const &p, ClassIndex const &cls, ExtractionMode const &mode)
{
	if (cls.exactness != Exactness::exact)
		throw std::runtime_error("class extraction needs an exactly canonicalized class");
	auto const &spec = *cls.spec;
	bool commutative = spec.kind() == GroupKind::free_abelian && !spec.has_phi();
	if (commutative && mode.kind == ExtractionMode::Kind::canonical && !mode.root_shift)
	{
		// Untwisted free abelian: the class is {canonical}, every a (x) b is a
		// cycle, all canonical witnesses are trivial and the centralizer is the
		// whole group, so each edge contributes u = b^-1.
		HH1ClassValue out;
		out.cls = cls;
		out.cyclic = false;
		out.value.assign(class_value_dimension(cls), Rational(0));
		for (auto const &[k, q] : p.terms())
		{
			if (!(p.product(k) == cls.canonical))
				throw std::logic_error("vertex outside the extracted class");
			for (std::size_t i = 0; i < out.value.size(); ++i)
				out.value[i] -= q * Rational(k[1][i]);
		}
		if (!p.is_zero() && p.spec() != cls.spec)
			throw std::invalid_argument("extract_in_class: chain and class have different groups");
		return out;
	}
	if (!boundary1(p).is_zero())
		throw std::domain_error("chain is not a cycle at class " + spec.word_str(cls.canonical));

	HH1ClassValue out;
	out.cls = cls;
	out.cyclic = cls.twist == Twist::conjugacy && spec.kind() == GroupKind::free && !cls.is_identity_class();
	out.value.assign(class_value_dimension(cls), Rational(0));
	if (p.is_zero())
		return out;
	if (p.spec() != cls.spec)
		throw std::invalid_argument("extract_in_class: chain and class have different groups");

	// Edge e: from x = phi(b) a to y = a b, label b.
	struct Edge
	{
		std::size_t x, y;
		Word const *b;
		Rational coef;
	};
	std::vector<Word> verts;
	std::vector<std::pair<Word, Word>> ends;
	ends.reserve(p.size());
	for (auto const &[k, q] : p.terms())
	{
		ends.emplace_back(spec.mul(spec.apply_phi(k[1]), k[0]), spec.mul(k[0], k[1]));
		verts.push_back(ends.back().first);
		verts.push_back(ends.back().second);
	}
	std::sort(verts.begin(), verts.end());
	verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
	auto index = [&](Word const &w) {
		return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), w) - verts.begin());
	};
	std::vector<Edge> edges;
	edges.reserve(p.size());
	for (std::size_t i = 0; i < p.size(); ++i)
		edges.push_back({index(ends[i].first), index(ends[i].second), &p.terms()[i].first[1], p.terms()[i].second});

	auto canonical_witness = [&](std::size_t v) {
		auto m = classify(cls.spec, verts[v]);
		if (!(m.cls == cls))
			throw std::logic_error("vertex outside the extracted class");
		return m.witness;
	};

	std::vector<Word> h(verts.size());
	if (mode.kind == ExtractionMode::Kind::canonical)
	{
		for (std::size_t v = 0; v < verts.size(); ++v)
			h[v] = canonical_witness(v);
	}
	else
	{
		std::vector<std::size_t> order = mode.vertex_order;
		if (order.empty())
			for (std::size_t v = 0; v < verts.size(); ++v)
				order.push_back(v);
		if (order.size() != verts.size())
			throw std::invalid_argument("vertex_order must permute the " + std::to_string(verts.size()) + " vertices");
		std::vector<std::vector<std::size_t>> adj(verts.size());
		for (std::size_t e = 0; e < edges.size(); ++e)
		{
			adj[edges[e].x].push_back(e);
			adj[edges[e].y].push_back(e);
		}
		std::vector<bool> seen(verts.size(), false);
		for (std::size_t root : order)
		{
			if (root >= verts.size())
				throw std::invalid_argument("vertex_order entry out of range");
			if (seen[root])
				continue;
			h[root] = canonical_witness(root);
			if (mode.root_shift)
			{
				centralizer_exponent(cls, *mode.root_shift); // throws if not central
				h[root] = spec.mul(h[root], *mode.root_shift);
			}
			seen[root] = true;
			std::deque<std::size_t> queue{root};
			while (!queue.empty())
			{
				std::size_t v = queue.front();
				queue.pop_front();
				for (std::size_t e : adj[v])
				{
					auto const &ed = edges[e];
					// y = phi(b^-1) x b, so h_y = b^-1 h_x along the edge
					if (ed.x == v && !seen[ed.y])
					{
						h[ed.y] = spec.mul(spec.inverse(*ed.b), h[v]);
						seen[ed.y] = true;
						queue.push_back(ed.y);
					}
					else if (ed.y == v && !seen[ed.x])
					{
						h[ed.x] = spec.mul(*ed.b, h[v]);
						seen[ed.x] = true;
						queue.push_back(ed.x);
					}
				}
			}
		}
	}

	for (auto const &ed : edges)
	{
		Word u = spec.mul(spec.inverse(h[ed.y]), spec.inverse(*ed.b), h[ed.x]);
		auto ex = centralizer_exponent(cls, u);
		for (std::size_t i = 0; i < ex.size(); ++i)
			out.value[i] += ed.coef * Rational(ex[i]);
	}
	return out;
}

// ---- completed chains -------------------------------------------------------------------

void CompletedChain1::add_class(ClassIndex const &cls, Chain1 const &c)
{
	if (c.is_zero())
		return;
	auto it = find_class(per_class, cls, default_search_bound);
	if (it == per_class.end())
	{
		per_class.emplace(cls, c);
		return;
	}
	it->second += c;
	if (it->second.is_zero())
		per_class.erase(it);
}

void CompletedChain1::add(Chain1 const &c, int bound)
{
	if (c.is_zero())
		return;
	for (auto &[cls, part] : decompose(c, bound))
		if (Level(cls.xi) > cutoff)
			add_class(cls, part);
}

CompletedChain1 CompletedChain1::scaled(Rational const &q) const
{
	CompletedChain1 r(spec, cutoff, ring);
	if (q.is_zero())
		return r;
	for (auto const &[cls, c] : per_class)
		r.per_class.emplace(cls, q * c);
	return r;
}

void CompletedChain1::merge(CompletedChain1 const &o)
{
	if (!same_spec(spec, o.spec))
		throw std::invalid_argument("merging completed chains over different groups");
	if (ring != o.ring)
		throw std::invalid_argument("merging completed chains over different coefficient rings");
	cutoff = max(cutoff, o.cutoff);
	for (auto const &[cls, c] : o.per_class)
		add_class(cls, c);
	for (auto it = per_class.begin(); it != per_class.end();)
		it = Level(it->first.xi) > cutoff ? std::next(it) : per_class.erase(it);
}

CompletedChain1 CompletedChain1::rationalize() const
{
	CompletedChain1 r(spec, cutoff, CoeffRing::rational);
	for (auto const &[cls, c] : per_class)
		r.per_class.emplace(cls, c.to_rational());
	return r;
}

std::vector<ClassIndex> CompletedChain1::classes() const
{
	std::vector<ClassIndex> r;
	for (auto const &kv : per_class)
		r.push_back(kv.first);
	std::sort(r.begin(), r.end(), class_report_less);
	return r;
}

Chain1 rationalize(Chain1 const &c) { return c.to_rational(); }
Chain2 rationalize(Chain2 const &c) { return c.to_rational(); }

// ---- homomorphisms ------------------------------------------------------------------------

namespace {

// sum n * xi(g2) / xi(class) over the terms accepted by in_cls
template <class Pred> Rational l_sum(Chain1 const &c, ClassIndex const &cls, Pred in_cls)
{
	if (cls.xi.sign() >= 0)
		return Rational(0);
	Rational s(0);
	auto const &spec = *cls.spec;
	for (auto const &[k, q] : c.terms())
		if (in_cls(k))
			s += q * spec.xi_value(k[1]);
	return s / cls.xi;
}

} // namespace

Rational l_hom(Chain1 const &c, ClassIndex const &cls)
{
	return l_sum(c, cls, [&](Chain1::Key const &k) { return class_of(cls.spec, c.product(k)) == cls; });
}

EtaSeries l_hom(CompletedChain1 const &c)
{
	EtaSeries out;
	for (auto const &[cls, ch] : c.per_class)
	{
		// per-class chains are supported in their class
		Rational v = l_sum(ch, cls, [](Chain1::Key const &) { return true; });
		if (!v.is_zero())
			out.emplace(cls, v);
	}
	return out;
}

Chain1 e_hom(ClassIndex const &cls, Rational const &q)
{
	Chain1 r(cls.spec, CoeffRing::rational);
	if (!q.is_zero())
		r.push({cls.spec->identity(), cls.canonical}, q);
	return r;
}

Level theta_exactness_level(NovikovSeries const &a, NovikovSeries const &b)
{
	return max(a.cutoff + b.degree_bound(), b.cutoff + a.degree_bound());
}

Chain1 theta_expand(NovikovSeries const &a, NovikovSeries const &b, ClassIndex const &cls, std::optional<Rational> level)
{
	Level ex = theta_exactness_level(a, b);
	if (!(Level(cls.xi) > ex))
		throw std::domain_error("theta_expand: class at xi " + cls.xi.str() + " is not above the exactness level " +
		                        ex.str());
	Level m = level ? Level(*level) : ex;
	if (level && !(Level(*level) < Level(cls.xi)))
		throw std::invalid_argument("theta_expand: truncation level must lie below the class");
	GroupRingElem ta = a.body, tb = b.body;
	if (m.is_finite())
	{
		Level da = a.degree_bound(), db = b.degree_bound();
		if (da.is_neg_inf() || db.is_neg_inf())
			return Chain1(cls.spec, a.ring());
		ta = ta.truncated_above(Level(m.value() - db.value()));
		tb = tb.truncated_above(Level(m.value() - da.value()));
	}
	return project_class(tensor(ta, tb), cls);
}

} // namespace nzeta
