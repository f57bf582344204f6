#include "nzeta/cli.hpp"
#include "nzeta/problem.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nzeta {

using nlohmann::json;

namespace {

struct Options
{
	std::string command;
	std::string file;
	std::string cutoff;
	std::string output = "table";
	int bound = default_search_bound;
};

std::string class_name(ClassIndex const &c) { return "gamma(" + c.spec->word_str(c.canonical) + ")"; }

std::string value_str(std::vector<Rational> const &v)
{
	std::string s = "[";
	for (std::size_t i = 0; i < v.size(); ++i)
		s += (i ? ", " : "") + v[i].str();
	return s + "]";
}

json value_json(std::vector<Rational> const &v)
{
	json a = json::array();
	for (auto const &x : v)
		a.push_back(x.str());
	return a;
}

json chain_json(Chain1 const &c)
{
	json a = json::array();
	for (auto const &[k, q] : c.report_terms())
		a.push_back({{"coef", q.str()}, {"g1", word_json(k[0])}, {"g2", word_json(k[1])}});
	return a;
}

std::string cutoff_line(Level const &c)
{
	return "cutoff: " + c.str() + " (only classes with xi > cutoff are computed)";
}

// Per-class report of a zeta result.
void report_zeta(ZetaResult const &z, std::string const &source, Options const &o, std::ostream &out)
{
	if (o.output == "machine")
	{
		json cls = json::array();
		for (auto const &v : z.classes)
			cls.push_back({{"class", class_json(v.cls)},
			               {"chain", chain_json(z.chain.per_class.at(v.cls))},
			               {"value", value_json(v.value)}});
		out << json{{"command", o.command}, {"source", source}, {"cutoff", z.cutoff.str()}, {"classes", cls}}.dump(2)
		    << "\n";
		return;
	}
	out << cutoff_line(z.cutoff) << "\n";
	out << "source: " << source << "\n";
	out << z.classes.size() << " class(es)\n";
	for (auto const &v : z.classes)
		out << class_name(v.cls) << "  xi=" << v.cls.xi.str() << "  value=" << value_str(v.value)
		    << "  chain=" << z.chain.per_class.at(v.cls).str() << "\n";
}

void report_eta(EtaSeries const &e, Level const &cutoff, Options const &o, std::ostream &out)
{
	std::vector<ClassIndex> order;
	for (auto const &[c, q] : e)
		order.push_back(c);
	std::sort(order.begin(), order.end(), class_report_less);
	if (o.output == "machine")
	{
		json a = json::array();
		for (auto const &c : order)
			a.push_back({{"class", class_json(c)}, {"eta", e.at(c).str()}});
		out << json{{"command", o.command}, {"cutoff", cutoff.str()}, {"eta", a}}.dump(2) << "\n";
		return;
	}
	out << cutoff_line(cutoff) << "\n";
	for (auto const &c : order)
		out << class_name(c) << "  eta=" << e.at(c).str() << "\n";
}

void report_series(NovikovSeries const &s, std::optional<bool> det_agrees, Options const &o, std::ostream &out)
{
	auto terms = s.body.report_terms();
	if (o.output == "machine")
	{
		json a = json::array();
		for (auto const &[w, c] : terms)
			a.push_back({{"coef", c.str()}, {"word", word_json(w)}});
		json j = {{"command", o.command}, {"cutoff", s.cutoff.str()}, {"series", a}};
		if (det_agrees)
			j["determinant_route_agrees"] = *det_agrees;
		out << j.dump(2) << "\n";
		return;
	}
	out << cutoff_line(s.cutoff) << "\n";
	out << "commutative zeta: " << s.body.str() << " + O(xi <= " << s.cutoff.str() << ")\n";
	if (det_agrees)
		out << "determinant route: " << (*det_agrees ? "agrees" : "DIFFERS") << "\n";
}

ZetaResult primary_zeta(Problem const &p, std::string &source)
{
	if (p.matrices)
	{
		source = "matrices";
		return zeta_from_matrices(p.group, *p.matrices, p.cutoff);
	}
	if (p.orbits)
	{
		source = "orbits";
		return nielsen_fuller(p.group, *p.orbits, p.cutoff);
	}
	throw std::invalid_argument("this command needs \"matrices\" or \"orbits\"");
}

int cmd_verify(Problem const &p, Options const &o, std::ostream &out)
{
	if (!p.matrices && !p.orbits)
		throw std::invalid_argument("verify needs \"matrices\" and/or \"orbits\"");
	struct Check
	{
		std::string name;
		std::vector<ClassIndex> bad;
		bool pass;
	};
	std::vector<Check> checks;
	auto add = [&](std::string name, std::vector<ClassIndex> bad) {
		bool pass = bad.empty();
		checks.push_back({std::move(name), std::move(bad), pass});
	};
	std::optional<ZetaResult> zm, zo;
	if (p.matrices)
		zm = zeta_from_matrices(p.group, *p.matrices, p.cutoff);
	if (p.orbits)
		zo = nielsen_fuller(p.group, *p.orbits, p.cutoff);
	if (zm && zo)
	{
		add("zeta: matrix pipeline = orbit pipeline", compare_results(*zm, *zo));
		add("eta: l(zeta) = sum sign/m over orbits", compare_eta(eta(*zm), eta_from_orbits(p.group, *p.orbits, p.cutoff)));
	}
	if (zm)
		add("rational zeta = e(eta) (matrices)", rational_zeta_mismatches(*zm));
	if (zo)
		add("rational zeta = e(eta) (orbits)", rational_zeta_mismatches(*zo));
	if (zm && !p.group->has_phi())
		checks.push_back({"commutative zeta: exp(eps(eta)) = determinant route",
		                  {},
		                  commutative_zeta(*zm, p.cutoff) ==
		                      commutative_zeta_determinant(p.group, *p.matrices, p.cutoff)});
	bool ok = std::all_of(checks.begin(), checks.end(), [](Check const &c) { return c.pass; });

	if (o.output == "machine")
	{
		json a = json::array();
		for (auto const &c : checks)
		{
			json bad = json::array();
			for (auto const &k : c.bad)
				bad.push_back(class_json(k));
			a.push_back({{"check", c.name}, {"pass", c.pass}, {"mismatched_classes", bad}});
		}
		out << json{{"command", "verify"}, {"cutoff", Level(p.cutoff).str()}, {"ok", ok}, {"checks", a}}.dump(2)
		    << "\n";
	}
	else
	{
		out << cutoff_line(Level(p.cutoff)) << "\n";
		for (auto const &c : checks)
		{
			out << (c.pass ? "PASS  " : "FAIL  ") << c.name;
			if (!c.bad.empty())
			{
				out << "  mismatched:";
				for (auto const &k : c.bad)
					out << " " << class_name(k);
			}
			out << "\n";
		}
		out << (ok ? "verified" : "MISMATCH") << "\n";
	}
	return ok ? exit_ok : exit_mismatch;
}

int dispatch(Problem const &p, Options const &o, std::ostream &out)
{
	if (o.command == "zeta")
	{
		std::string source;
		auto z = primary_zeta(p, source);
		report_zeta(z, source, o, out);
		return exit_ok;
	}
	if (o.command == "eta")
	{
		std::string source;
		auto z = primary_zeta(p, source);
		report_eta(eta(z), z.cutoff, o, out);
		return exit_ok;
	}
	if (o.command == "commutative")
	{
		std::string source;
		auto z = primary_zeta(p, source);
		auto s = commutative_zeta(z, p.cutoff);
		std::optional<bool> det;
		if (p.matrices)
			det = s == commutative_zeta_determinant(p.group, *p.matrices, p.cutoff);
		report_series(s, det, o, out);
		return det && !*det ? exit_mismatch : exit_ok;
	}
	if (o.command == "verify")
		return cmd_verify(p, o, out);
	// trace
	if (!p.one_parameter)
		throw std::invalid_argument("trace needs \"one_parameter\"");
	std::vector<ClassIndex> ex;
	for (auto const &w : p.one_parameter->excluded)
		ex.push_back(class_of(p.group, w));
	auto z = one_parameter_trace(p.one_parameter->d, p.one_parameter->bnd, ex, o.bound);
	report_zeta(z, "one_parameter", o, out);
	return exit_ok;
}

} // namespace

int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
	CLI::App app{"Noncommutative zeta functions of Novikov torsion: exact per-class computations"};
	app.require_subcommand(1);
	Options o;
	struct Cmd
	{
		char const *name, *help;
	};
	for (auto const &[name, help] : {Cmd{"zeta", "per-class zeta chains and homology values"},
	                                 Cmd{"eta", "the eta function l(zeta)"},
	                                 Cmd{"commutative", "the commutative zeta exp(eps(eta))"},
	                                 Cmd{"verify", "cross-check the matrix and orbit pipelines"},
	                                 Cmd{"trace", "the one-parameter trace of D and bnd"}})
	{
		auto *sub = app.add_subcommand(name, help);
		sub->add_option("file", o.file, "problem file (JSON)")->required();
		sub->add_option("--cutoff", o.cutoff, "override the cutoff, as p/q");
		sub->add_option("--output", o.output, "report format")->check(CLI::IsMember({"table", "machine"}));
		sub->add_option("--bound", o.bound, "conjugator search bound for twisted free classes")
		    ->check(CLI::NonNegativeNumber);
		sub->callback([&o, name] { o.command = name; });
	}

	std::vector<std::string> rev(args.rbegin(), args.rend());
	try
	{
		app.parse(rev);
	}
	catch (CLI::ParseError const &e)
	{
		std::ostringstream so, se;
		int code = app.exit(e, so, se);
		out << so.str();
		err << se.str();
		return code == 0 ? exit_ok : exit_invalid;
	}

	try
	{
		std::ifstream in(o.file);
		if (!in)
			throw ProblemError(o.file, "cannot read file");
		std::stringstream buf;
		buf << in.rdbuf();
		Problem p;
		try
		{
			p = parse_problem_text(buf.str());
		}
		catch (ProblemError const &e)
		{
			throw ProblemError(o.file + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
		}
		if (!o.cutoff.empty())
		{
			Rational c;
			try
			{
				c = Rational::parse(o.cutoff);
			}
			catch (std::exception const &e)
			{
				throw ProblemError("--cutoff", e.what());
			}
			if (!(c < Rational(0)))
				throw ProblemError("--cutoff", "cutoff must be negative");
			p.cutoff = c;
		}
		return dispatch(p, o, out);
	}
	catch (ProblemError const &e)
	{
		err << "error: " << e.what() << "\n";
		return exit_invalid;
	}
	catch (std::overflow_error const &e)
	{
		err << "error: " << e.what() << " (try a shallower cutoff)\n";
		return exit_invalid;
	}
	catch (std::exception const &e)
	{
		err << "error: " << e.what() << "\n";
		return exit_invalid;
	}
}

} // namespace nzeta
