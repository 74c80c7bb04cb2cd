#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "quniv/acceptance.hpp"
#include "quniv/errors.hpp"
#include "quniv/json_io.hpp"

using namespace quniv;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kPrecisionError = 3 };

struct Common {
  std::string json_out;
  bool timing = false;
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Json report_header(const std::vector<std::string>& args) {
  return Json{{"tool", "quniv"}, {"version", kVersion}, {"command", args}};
}

void emit(const Json& report, const Common& c) {
  if (c.json_out.empty()) return;
  if (c.json_out == "-") {
    std::cout << dump(report);
    return;
  }
  std::ofstream out(c.json_out);
  if (!out) throw InputError("cannot write " + c.json_out);
  out << dump(report);
}

// Summary lines go to stdout unless the JSON report itself is going there.
std::ostream& summary(const Common& c) {
  static std::ostringstream sink;
  return c.json_out == "-" ? sink : std::cout;
}

int precision_from_env() {
  const char* env = std::getenv("QUNIV_PRECISION");
  if (!env || !*env) return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end || v <= 0 || v > 4096) throw InputError(std::string("QUNIV_PRECISION must be a positive integer, got '") + env + "'");
  return int(v);
}

struct AnalyzeFlags {
  std::vector<long> places;
  long bound = 1000;
  bool oracle = false;
};

GlobalOptions global_options(const AnalyzeFlags& f) {
  GlobalOptions o;
  o.bound = f.bound;
  o.local.oracle_only = f.oracle;
  o.local.precision = precision_from_env();
  if (!f.places.empty()) {
    std::vector<Integer> ps;
    for (long p : f.places) {
      if (p < 2 || !is_prime(p)) throw InputError("--places: " + std::to_string(p) + " is not a prime");
      ps.emplace_back(p);
    }
    o.local.places = ps;
  }
  return o;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Runs the three deciders and prints a short summary.
Json analysis(const QuadLattice& L, const AnalyzeFlags& flags, const Common& c, std::ostream& out) {
  auto t0 = Clock::now();
  GlobalVerdict g = is_globally_universal(L, global_options(flags));
  double t_global = since(t0);
  t0 = Clock::now();
  Json potential;
  if (L.rank() < 2) {
    potential = Json{{"potentially_universal", false}, {"reason", "rank 1"}};
  } else {
    bool pu = is_potentially_universal(L);
    potential = Json{{"potentially_universal", pu}, {"norm_ideal", serialize(L.norm_ideal())}};
  }
  double t_potential = since(t0);

  out << "field: " << L.field().name() << "\n";
  out << "form: " << form_polynomial(L.gram()) << (L.is_free() ? "" : " (non-free pseudo-basis)") << "\n";
  out << "locally universal: " << yes_no(g.local.universal) << (g.local.restricted ? " (restricted places)" : "")
      << "\n";
  for (const auto& v : g.local.verdicts) {
    out << "  " << v.place << ": " << yes_no(v.universal) << " [" << rule_name(v.rule) << "]";
    if (v.witness) out << " misses " << v.witness->str();
    out << "\n";
  }
  if (!g.local.generic_reason.empty()) out << "  other places: " << g.local.generic_reason << "\n";
  out << "globally: " << status_name(g.status);
  if (g.proof != ProofKind::None) out << " (" << proof_name(g.proof) << ")";
  if (g.witness) out << ", witness " << g.witness->str() << (g.witness_place.empty() ? "" : " at " + g.witness_place);
  out << "\n  " << g.reason << "\n";
  out << "potentially universal: " << yes_no(potential["potentially_universal"].get<bool>()) << "\n";

  Json j{{"lattice", lattice_json(L)},
         {"polynomial", form_polynomial(L.gram())},
         {"local", serialize(g.local)},
         {"global", serialize(g)},
         {"potential", potential}};
  if (c.timing) j["timing"] = Json{{"global_seconds", t_global}, {"potential_seconds", t_potential}};
  return j;
}

std::string read_input(const std::string& arg) {
  size_t first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw InputError("cannot read '" + arg + "' (neither a file nor inline JSON)");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A lattice, or any report that carries one under "lattice".
QuadLattice lattice_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("lattice JSON: ") + e.what());
  }
  if (j.is_object() && !j.contains("gram") && j.contains("lattice")) return lattice_from_json(j.at("lattice"));
  return lattice_from_json(j);
}

NumberField imquad(long d) { return NumberField::imaginary_quadratic(d); }

Ideal parse_ideal(const NumberField& k, const std::string& spec) {
  std::vector<FieldElem> gens;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) gens.push_back(FieldElem::parse(k, item));
  if (gens.empty()) throw InputError("--ideal needs at least one generator");
  for (const auto& g : gens)
    if (!g.is_integral()) throw InputError("--ideal generators must be integral");
  return Ideal::generated_by(k, gens);
}

// First ideal class on which the Artin symbol of k(sqrt a) is nontrivial.
Ideal default_ternary_ideal(long d) {
  auto a = find_unramified_quadratic(d);
  if (!a) throw InputError("no unramified quadratic extension of " + imquad(d).name() + " found");
  const auto& G = class_group(d);
  for (size_t i = 1; i < G.order(); ++i)
    if (artin_symbol(G.ideal_of(i), *a) == -1) return G.ideal_of(i);
  throw InputError("every ideal class splits in k(sqrt " + a->str() + ")");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"Local, global and potential universality of integral quadratic forms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  AnalyzeFlags aflags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json", common.json_out, "write the JSON report to this path ('-' for stdout)");
    sub->add_flag("--timing", common.timing, "include wall-clock timings in the report");
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--places", aflags.places, "restrict the finite places to these rational primes")->delimiter(',');
    sub->add_option("--bound", aflags.bound, "norm bound for global searches")->check(CLI::PositiveNumber);
    sub->add_flag("--oracle", aflags.oracle, "decide every finite place by the enumeration oracle");
  };

  auto* analyze = app.add_subcommand("analyze", "analyze a lattice given as a JSON file or inline JSON");
  std::string input;
  analyze->add_option("lattice", input, "path or inline JSON")->required();
  add_common(analyze);
  add_analysis(analyze);

  auto* construct = app.add_subcommand("construct", "build an example family and analyze it");
  construct->require_subcommand(1);
  long d = -5;
  std::string ideal_spec;
  std::vector<long> primes;
  long N = 5, z_bound = 10;
  auto* binary = construct->add_subcommand("binary", "A x + A^-1 y on a free basis");
  binary->add_option("--d", d, "squarefree d < 0")->required();
  binary->add_option("--ideal", ideal_spec, "comma-separated generators, e.g. 2,1+w")->required();
  auto* ternary = construct->add_subcommand("ternary", "(A x + A^-1 y) + (p) z");
  ternary->add_option("--d", d, "squarefree d < 0")->required();
  ternary->add_option("--p", primes, "inert primes")->required()->delimiter(',');
  ternary->add_option("--ideal", ideal_spec, "comma-separated generators (default: a class with nontrivial Artin symbol)");
  auto* counter = construct->add_subcommand("counterexample", "x^2 + y^2 - pq z^2 over Z");
  counter->add_option("--N", N, "range [-N, N] to represent")->required()->check(CLI::PositiveNumber);
  counter->add_option("--z-bound", z_bound, "search bound for the range check")->check(CLI::PositiveNumber);
  for (auto* sub : {binary, ternary, counter}) {
    add_common(sub);
    add_analysis(sub);
  }

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance suite");
  std::vector<std::string> only;
  verify->add_option("--only", only, "item numbers or tags")->delimiter(',');
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    Json report = report_header(args);
    auto t0 = Clock::now();
    int code = kOk;
    std::ostream& out = summary(common);
    if (analyze->parsed()) {
      QuadLattice L = lattice_from_text(read_input(input));
      report["analysis"] = analysis(L, aflags, common, out);
    } else if (binary->parsed()) {
      auto k = imquad(d);
      auto c = construct_binary(parse_ideal(k, ideal_spec));
      out << "construction: " << form_polynomial(c.free.gram()) << " from " << c.ideal.str() << "\n";
      report["construction"] = serialize(c);
      report["lattice"] = lattice_json(c.free);
      report["analysis"] = analysis(c.free, aflags, common, out);
    } else if (ternary->parsed()) {
      Ideal A = ideal_spec.empty() ? default_ternary_ideal(d) : parse_ideal(imquad(d), ideal_spec);
      std::vector<Integer> ps(primes.begin(), primes.end());
      auto fam = construct_ternary_family(d, A, ps);
      report["construction"] = serialize(fam);
      report["lattice"] = lattice_json(fam.members.front());
      Json analyses = Json::array();
      for (size_t i = 0; i < fam.members.size(); ++i) {
        out << "member p = " << fam.primes[i] << ": " << form_polynomial(fam.members[i].gram()) << "\n";
        analyses.push_back(analysis(fam.members[i], aflags, common, out));
      }
      report["analysis"] = analyses.size() == 1 ? analyses[0] : analyses;
    } else if (counter->parsed()) {
      auto c = counterexample_family(N);
      auto range = represents_range_check(c.form, N, z_bound);
      out << "construction: " << form_polynomial(c.form.gram()) << " with (p, q) = (" << c.p << ", " << c.q << ")\n";
      out << "represents every n in [" << -N << ", " << N << "]: " << yes_no(range.unresolved.empty()) << "\n";
      report["construction"] = serialize(c);
      report["range"] = serialize(range);
      report["lattice"] = lattice_json(c.form);
      report["analysis"] = analysis(c.form, aflags, common, out);
    } else if (verify->parsed()) {
      auto results = run_acceptance(only);
      Json items = Json::array();
      bool ok = true;
      for (const auto& r : results) {
        out << acceptance_line(r) << "\n";
        items.push_back(serialize(r, common.timing));
        ok = ok && r.pass;
      }
      report["items"] = items;
      report["all_pass"] = ok;
      code = ok ? kOk : kVerifyFailed;
    }
    if (common.timing) report["timing"] = Json{{"total_seconds", since(t0)}};
    out.flush();
    emit(report, common);
    return code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kPrecisionError;
  }
}
