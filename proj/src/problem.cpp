#include "nzeta/problem.hpp"

#include <limits>

namespace nzeta {

using nlohmann::json;

namespace {

// A JSON value together with its pointer path, for diagnostics.
struct Node
{
	json const &j;
	std::string path;

	[[noreturn]] void fail(std::string const &what) const { throw ProblemError(path.empty() ? "/" : path, what); }

	Node at(std::string const &key) const
	{
		if (!j.is_object())
			fail("expected an object");
		auto it = j.find(key);
		if (it == j.end())
			fail("missing field \"" + key + "\"");
		return {*it, path + "/" + key};
	}
	std::optional<Node> maybe(std::string const &key) const
	{
		if (!j.is_object())
			fail("expected an object");
		auto it = j.find(key);
		if (it == j.end() || it->is_null())
			return std::nullopt;
		return Node{*it, path + "/" + key};
	}
	Node operator[](std::size_t i) const { return {j[i], path + "/" + std::to_string(i)}; }
	std::size_t array_size() const
	{
		if (!j.is_array())
			fail("expected an array");
		return j.size();
	}
	std::int64_t integer() const
	{
		if (!j.is_number_integer())
			fail("expected an integer");
		return j.get<std::int64_t>();
	}
	std::string string() const
	{
		if (!j.is_string())
			fail("expected a string");
		return j.get<std::string>();
	}
	Rational rational() const
	{
		if (j.is_number_integer())
			return Rational(j.get<std::int64_t>());
		if (!j.is_string())
			fail("expected a rational string \"p/q\"");
		try
		{
			return Rational::parse(j.get<std::string>());
		}
		catch (std::exception const &e)
		{
			fail(e.what());
		}
	}
	void only(std::initializer_list<char const *> keys) const
	{
		for (auto const &[k, v] : j.items())
			if (std::find_if(keys.begin(), keys.end(), [&](char const *x) { return k == x; }) == keys.end())
				fail("unknown field \"" + k + "\"");
	}
};

std::int32_t to_i32(Node const &n)
{
	auto v = n.integer();
	if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max())
		n.fail("integer out of range");
	return static_cast<std::int32_t>(v);
}

SpecPtr parse_group(Node const &g)
{
	g.only({"kind", "rank", "xi", "phi"});
	auto kind = g.at("kind").string();
	auto rank_node = g.at("rank");
	auto rank = rank_node.integer();
	if (rank < 1 || rank > 1000)
		rank_node.fail("rank must be between 1 and 1000");
	auto xn = g.at("xi");
	std::vector<Rational> xi;
	for (std::size_t i = 0; i < xn.array_size(); ++i)
		xi.push_back(xn[i].rational());
	if (xi.size() != static_cast<std::size_t>(rank))
		xn.fail("xi must have one entry per generator");
	auto phi = g.maybe("phi");
	try
	{
		if (kind == "free")
		{
			std::optional<std::vector<Word>> images;
			if (phi)
			{
				images.emplace();
				for (std::size_t i = 0; i < phi->array_size(); ++i)
				{
					auto w = (*phi)[i];
					std::vector<std::int32_t> raw;
					for (std::size_t k = 0; k < w.array_size(); ++k)
					{
						auto x = to_i32(w[k]);
						if (x == 0 || x > rank || x < -rank)
							w[k].fail("generator index out of range");
						raw.push_back(x);
					}
					// canonical: reduced images
					images->push_back(GroupSpec::make_free(static_cast<int>(rank), xi)->reduce(raw));
				}
			}
			return GroupSpec::make_free(static_cast<int>(rank), xi, images);
		}
		if (kind == "free_abelian")
		{
			std::optional<IntMatrix> m;
			if (phi)
			{
				auto n = static_cast<std::size_t>(rank);
				if (phi->array_size() != n)
					phi->fail("phi must be a rank x rank integer matrix");
				m.emplace(n, n);
				for (std::size_t i = 0; i < n; ++i)
				{
					auto row = (*phi)[i];
					if (row.array_size() != n)
						row.fail("phi must be a rank x rank integer matrix");
					for (std::size_t k = 0; k < n; ++k)
						(*m)(i, k) = row[k].integer();
				}
			}
			return GroupSpec::make_free_abelian(static_cast<int>(rank), xi, m);
		}
	}
	catch (ProblemError const &)
	{
		throw;
	}
	catch (std::exception const &e)
	{
		g.fail(e.what());
	}
	g.at("kind").fail("kind must be \"free\" or \"free_abelian\"");
}

Word parse_word(SpecPtr const &s, Node const &n)
{
	std::vector<std::int32_t> raw;
	for (std::size_t i = 0; i < n.array_size(); ++i)
		raw.push_back(to_i32(n[i]));
	try
	{
		if (s->kind() == GroupKind::free)
			return s->reduce(raw);
		Word w(Word::Storage(raw.begin(), raw.end()));
		s->validate(w);
		return w;
	}
	catch (std::exception const &e)
	{
		n.fail(std::string("invalid word: ") + e.what());
	}
}

GroupRingElem parse_element(SpecPtr const &s, Node const &n)
{
	std::vector<GroupRingElem::Term> terms;
	for (std::size_t i = 0; i < n.array_size(); ++i)
	{
		auto t = n[i];
		t.only({"coef", "word"});
		auto c = t.at("coef");
		Rational q = c.rational();
		if (!q.is_integer())
			c.fail("matrix entries live in ZG: coefficients must be integers");
		terms.emplace_back(parse_word(s, t.at("word")), q);
	}
	return GroupRingElem::from_terms(s, CoeffRing::integer, std::move(terms));
}

GRMatrix parse_matrix(SpecPtr const &s, Node const &rows)
{
	std::size_t r = rows.array_size();
	if (r == 0)
		rows.fail("matrix must have at least one row");
	std::size_t c = rows[0].array_size();
	if (c == 0)
		rows.fail("matrix must have at least one column");
	GRMatrix m(r, c, GroupRingElem(s));
	for (std::size_t i = 0; i < r; ++i)
	{
		auto row = rows[i];
		if (row.array_size() != c)
			row.fail("rows must all have " + std::to_string(c) + " entries");
		for (std::size_t k = 0; k < c; ++k)
			m(i, k) = parse_element(s, row[k]);
	}
	return m;
}

json rows_json(GRMatrix const &m)
{
	json rows = json::array();
	for (std::size_t i = 0; i < m.rows(); ++i)
	{
		json row = json::array();
		for (std::size_t k = 0; k < m.cols(); ++k)
			row.push_back(element_json(m(i, k)));
		rows.push_back(std::move(row));
	}
	return rows;
}

} // namespace

json word_json(Word const &w)
{
	json a = json::array();
	for (auto x : w.storage())
		a.push_back(x);
	return a;
}

json element_json(GroupRingElem const &e)
{
	json a = json::array();
	for (auto const &[w, c] : e.terms())
		a.push_back({{"coef", c.str()}, {"word", word_json(w)}});
	return a;
}

json class_json(ClassIndex const &c)
{
	return {{"canonical", word_json(c.canonical)},
	        {"display", c.spec->word_str(c.canonical)},
	        {"twist", c.twist == Twist::conjugacy ? "conjugacy" : "semiconjugacy"},
	        {"exact", c.exactness == Exactness::exact},
	        {"xi", c.xi.str()}};
}

Problem parse_problem(json const &j)
{
	Node root{j, ""};
	root.only({"group", "cutoff", "matrices", "orbits", "one_parameter"});
	Problem p;
	p.group = parse_group(root.at("group"));
	auto cut = root.at("cutoff");
	p.cutoff = cut.rational();
	if (!(p.cutoff < Rational(0)))
		cut.fail("cutoff must be negative");

	if (auto ms = root.maybe("matrices"))
	{
		p.matrices.emplace();
		for (std::size_t i = 0; i < ms->array_size(); ++i)
		{
			auto m = (*ms)[i];
			m.only({"index", "rows"});
			auto idx = m.at("index").integer();
			if (idx < 0)
				m.at("index").fail("dimension index must be nonnegative");
			auto a = parse_matrix(p.group, m.at("rows"));
			if (!a.square())
				m.at("rows").fail("matrix must be square");
			p.matrices->emplace_back(idx, std::move(a));
		}
	}
	if (auto os = root.maybe("orbits"))
	{
		p.orbits.emplace();
		for (std::size_t i = 0; i < os->array_size(); ++i)
		{
			auto o = (*os)[i];
			o.only({"primitive", "multiplicity", "sign"});
			OrbitRecord r;
			r.primitive = parse_word(p.group, o.at("primitive"));
			r.multiplicity = o.at("multiplicity").integer();
			if (r.multiplicity < 1)
				o.at("multiplicity").fail("multiplicity must be positive");
			auto sg = o.at("sign").integer();
			if (sg != 1 && sg != -1)
				o.at("sign").fail("sign must be 1 or -1");
			r.sign = static_cast<int>(sg);
			if (!(p.group->xi_value(r.primitive) < Rational(0)))
				o.at("primitive").fail("orbit elements must have xi < 0");
			p.orbits->push_back(std::move(r));
		}
	}
	if (auto op = root.maybe("one_parameter"))
	{
		op->only({"D", "bnd", "excluded"});
		OneParameterInput in;
		in.d = parse_matrix(p.group, op->at("D"));
		in.bnd = parse_matrix(p.group, op->at("bnd"));
		if (in.d.cols() != in.bnd.rows() || in.d.rows() != in.bnd.cols())
			op->at("bnd").fail("shape must be the transpose of D's (n x k against k x n)");
		if (auto ex = op->maybe("excluded"))
			for (std::size_t i = 0; i < ex->array_size(); ++i)
				in.excluded.push_back(parse_word(p.group, (*ex)[i]));
		p.one_parameter = std::move(in);
	}
	if (!p.matrices && !p.orbits && !p.one_parameter)
		root.fail("at least one of matrices, orbits, one_parameter is required");
	return p;
}

Problem parse_problem_text(std::string const &text)
{
	json j;
	try
	{
		j = json::parse(text);
	}
	catch (json::parse_error const &e)
	{
		// locate the byte offset as line/column
		std::size_t line = 1, col = 1;
		for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
			if (text[i] == '\n')
			{
				++line;
				col = 1;
			}
			else
				++col;
		throw ProblemError("line " + std::to_string(line) + ", column " + std::to_string(col),
		                   "JSON syntax error");
	}
	return parse_problem(j);
}

json serialize_problem(Problem const &p)
{
	auto const &g = *p.group;
	json group = {{"kind", g.kind() == GroupKind::free ? "free" : "free_abelian"}, {"rank", g.rank()}};
	json xi = json::array();
	for (auto const &x : g.xi())
		xi.push_back(x.str());
	group["xi"] = xi;
	if (g.phi_images())
	{
		json phi = json::array();
		for (auto const &w : *g.phi_images())
			phi.push_back(word_json(w));
		group["phi"] = phi;
	}
	else if (g.phi_matrix())
	{
		json phi = json::array();
		auto const &m = *g.phi_matrix();
		for (std::size_t i = 0; i < m.rows(); ++i)
		{
			json row = json::array();
			for (std::size_t k = 0; k < m.cols(); ++k)
				row.push_back(m(i, k));
			phi.push_back(row);
		}
		group["phi"] = phi;
	}
	json out = {{"group", group}, {"cutoff", p.cutoff.str()}};
	if (p.matrices)
	{
		json ms = json::array();
		for (auto const &[i, a] : *p.matrices)
			ms.push_back({{"index", i}, {"rows", rows_json(a)}});
		out["matrices"] = ms;
	}
	if (p.orbits)
	{
		json os = json::array();
		for (auto const &r : *p.orbits)
			os.push_back({{"primitive", word_json(r.primitive)}, {"multiplicity", r.multiplicity}, {"sign", r.sign}});
		out["orbits"] = os;
	}
	if (p.one_parameter)
	{
		json ex = json::array();
		for (auto const &w : p.one_parameter->excluded)
			ex.push_back(word_json(w));
		out["one_parameter"] = {
		    {"D", rows_json(p.one_parameter->d)}, {"bnd", rows_json(p.one_parameter->bnd)}, {"excluded", ex}};
	}
	return out;
}

} // namespace nzeta
