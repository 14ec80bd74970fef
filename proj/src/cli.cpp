#include "chen/cli.hpp"

#include "chen/bar.hpp"
#include "chen/errors.hpp"
#include "chen/formdsl.hpp"
#include "chen/identities.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace chen {

using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_number(const std::string& s) {
  size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number in '" + s + "'", 0);
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw ParseError("trailing characters in '" + s + "'", used);
  return v;
}

void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(out_file, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out_file + "'");
  f << text << "\n";
}

void add_words(std::vector<int>& prefix, int n, int level, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == level) {
    out.push_back(prefix);
    return;
  }
  for (int i = 1; i <= n; ++i) {
    prefix.push_back(i);
    add_words(prefix, n, level, out);
    prefix.pop_back();
  }
}

struct SignatureArgs {
  std::string input;
  std::string path;
  int level = 2;
  int dim = 0;
  int grid = 1024;
  std::string out;
};

int cmd_signature(const SignatureArgs& a, std::ostream& out) {
  if (a.level < 1 || a.level > 4) throw std::invalid_argument("--level must be in 1..4");
  if (a.input.empty() == a.path.empty()) throw std::invalid_argument("give exactly one of --input and --path");
  QuadratureConfig q{a.grid};
  q.validate();
  const Path path = a.input.empty() ? parse_path_spec(a.path) : load_path_csv(read_file(a.input));
  if (a.dim != 0 && a.dim != path.dim())
    throw InputError("path has dimension " + std::to_string(path.dim()) + ", --dim says " + std::to_string(a.dim));
  emit(signature_json(path, a.level, q), a.out, out);
  return kExitOk;
}

struct IntegrateArgs {
  std::string forms;
  std::string limits;
  std::string path;
  std::string variations;
  int grid = 1024;
  int dim = 0;
  std::string out;
};

int cmd_integrate(const IntegrateArgs& a, std::ostream& out) {
  QuadratureConfig q{a.grid};
  q.validate();
  const Path path = parse_path_spec(a.path);
  if (a.dim != 0 && a.dim != path.dim())
    throw InputError("path has dimension " + std::to_string(path.dim()) + ", --dim says " + std::to_string(a.dim));
  const int n = path.dim();
  std::vector<Form> forms;
  for (const auto& f : split(a.forms, ';')) forms.push_back(parse_form(f, n));

  std::vector<double> lower(forms.size(), 0.0);
  double t = 1.0;
  if (!a.limits.empty()) {
    const auto parts = split(a.limits, ';');
    if (parts.size() != 2) throw ParseError("--limits must look like 's1,...,sk;t'", 0);
    const auto lows = split(parts[0], ',');
    if (lows.size() != forms.size())
      throw InputError("--limits gives " + std::to_string(lows.size()) + " lower limits for " +
                       std::to_string(forms.size()) + " forms");
    for (size_t i = 0; i < lows.size(); ++i) lower[i] = parse_number(lows[i]);
    t = parse_number(parts[1]);
  }
  for (double s : lower)
    if (s < 0 || s > 1) throw InputError("limits must lie in [0, 1]");
  if (t < 0 || t > 1) throw InputError("limits must lie in [0, 1]");

  const std::vector<Variation> vars = a.variations.empty() ? std::vector<Variation>{} : parse_variations_spec(a.variations);
  int arity = 0;
  for (const auto& f : forms) arity += f.degree() - 1;
  if (static_cast<int>(vars.size()) != arity)
    throw InputError("the integral has degree " + std::to_string(arity) + " but " + std::to_string(vars.size()) +
                     " variations were given");
  for (const auto& v : vars)
    if (v.dim() != n) throw InputError("variation dimension does not match the path");

  const double value = iterated_integral(forms, lower, t, q)(path, vars);
  json j;
  j["value"] = value;
  j["degree"] = arity;
  auto fj = json::array();
  for (const auto& f : forms) fj.push_back(format_form(f));
  j["forms"] = fj;
  j["lower"] = lower;
  j["upper"] = t;
  j["grid"] = q.m;
  j["dim"] = n;
  j["convention"] = std::string(kConvention);
  emit(j.dump(2), a.out, out);
  return kExitOk;
}

struct VerifyArgs {
  std::string ids = "all";
  int trials = 20;
  std::uint64_t seed = 1;
  int dim = 3;
  int k = 0;
  int grid = 1024;
  double fd = 1e-3;
  bool based = false;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  CaseConfig cfg;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.n = a.dim;
  if (a.k != 0) cfg.k = a.k;
  cfg.quad.m = a.grid;
  cfg.fd.h = a.fd;
  cfg.based = a.based;
  if (a.trials < 0) throw std::invalid_argument("--trials must be non-negative");

  std::vector<IdentityId> ids;
  if (a.ids == "all") {
    ids = all_identities();
    cfg.based = true;
  } else if (!a.ids.empty()) {
    for (const auto& name : split(a.ids, ',')) ids.push_back(parse_identity(name));
  }
  cfg.validate();

  const auto reports = run_suite(ids, cfg);
  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    char line[256];
    std::snprintf(line, sizeof line, "%s %-11s max_residual=%.3e tolerance=%.0e failures=%zu %.2fs",
                  r.pass ? "PASS" : "FAIL", std::string(to_string(r.id)).c_str(), r.max_residual, r.tolerance,
                  r.failures.size(), r.runtime_seconds);
    err << line << "\n";
  }
  emit(reports_json(reports), a.out, out);
  return all_pass ? kExitOk : kExitFailure;
}

struct BarArgs {
  std::string generators;
  std::string word;
  bool word_given = false;
  std::string variant = "based";
  bool check_d2 = false;
  int random = 0;
  std::uint64_t seed = 1;
  std::string out;
};

json terms_json(const BarElement& e) {
  auto arr = json::array();
  for (const auto& [k, c] : e.terms()) {
    json t;
    t["text"] = format_term(k, c);
    t["coefficient"] = c.get_str();
    t["left"] = k.left;
    t["word"] = k.word;
    t["right"] = k.right;
    arr.push_back(t);
  }
  return arr;
}

int cmd_bar(const BarArgs& a, std::ostream& out) {
  const BarVariant v = parse_variant(a.variant);
  if (a.random < 0) throw std::invalid_argument("--random must be non-negative");
  if (a.random > 0 && !a.check_d2) throw std::invalid_argument("--random requires --check-d2");
  if (!a.word_given && a.random == 0) throw std::invalid_argument("give --word or --check-d2 --random N");

  std::optional<Dga> g;
  if (!a.generators.empty()) {
    const auto first = a.generators.find_first_not_of(" \t\r\n");
    const bool inline_json = first != std::string::npos && a.generators[first] == '[';
    g = Dga::from_json(inline_json ? a.generators : read_file(a.generators));
  }

  json j;
  j["variant"] = std::string(to_string(v));
  j["convention"] = std::string(kConvention);
  bool ok = true;
  if (a.word_given) {
    if (!g) throw std::invalid_argument("--word needs --generators");
    const BarElement e = parse_bar_word(a.word, *g, v);
    const BarElement de = bar_differential(*g, e);
    j["word"] = format_terms(e);
    j["degree"] = e.is_zero() ? json(nullptr) : json(degree(*g, e.terms().begin()->first));
    j["differential"] = terms_json(de);
    if (a.check_d2) {
      const BarElement dd = certify_d_squared(*g, e);
      j["d2"] = {{"zero", dd.is_zero()}, {"terms", format_terms(dd)}};
      ok = ok && dd.is_zero();
    }
  }
  if (a.random > 0) {
    int nonzero = 0;
    auto failures = json::array();
    for (int i = 0; i < a.random; ++i) {
      Rng rng(a.seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(v)});
      const Dga dga = g ? *g : random_dga(rng);
      const BarElement e = random_bar_element(rng, dga, v);
      if (!certify_d_squared(dga, e).is_zero()) {
        ++nonzero;
        if (failures.size() < 10) failures.push_back(format_terms(e));
      }
    }
    j["zero"] = nonzero == 0;
    j["words"] = a.random;
    j["seed"] = a.seed;
    j["nonzero"] = nonzero;
    j["failures"] = failures;
    ok = ok && nonzero == 0;
  }
  emit(j.dump(2), a.out, out);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

std::string signature_json(const Path& path, int level, QuadratureConfig q) {
  if (level < 1 || level > 4) throw std::invalid_argument("signature level must be in 1..4");
  const int n = path.dim();
  std::vector<Form> dx;
  for (int i = 1; i <= n; ++i) dx.push_back(Form::basis(n, {i}, Polynomial::constant(n, 1)));
  auto arr = json::array();
  for (int j = 1; j <= level; ++j) {
    std::vector<std::vector<int>> words;
    std::vector<int> prefix;
    add_words(prefix, n, j, words);
    json entries = json::object();
    for (const auto& w : words) {
      std::vector<Form> forms;
      std::string key;
      for (size_t i = 0; i < w.size(); ++i) {
        forms.push_back(dx[w[i] - 1]);
        key += (i ? "," : "") + std::to_string(w[i]);
      }
      entries[key] = iterated_integral(forms, std::vector<double>(j, 0.0), 1.0, q)(path, {});
    }
    arr.push_back({{"level", j}, {"entries", entries}});
  }
  return arr.dump(2);
}

Path parse_path_spec(const std::string& spec) {
  if (spec.rfind("csv:", 0) == 0) return load_path_csv(read_file(spec.substr(4)));
  return Path::analytic(parse_coordinates(spec));
}

std::vector<Variation> parse_variations_spec(const std::string& spec) {
  std::vector<Variation> vs;
  for (const auto& part : split(spec, ';')) vs.emplace_back(Curve::analytic(parse_coordinates(part)));
  return vs;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated integrals on path spaces: signatures, identity checks and bar complexes", "chen"};
  app.require_subcommand(1);

  SignatureArgs sig;
  auto* s = app.add_subcommand("signature", "Coordinate signature of a path up to a level");
  s->add_option("--input", sig.input, "CSV file with header t,x1,...,xn");
  s->add_option("--path", sig.path, "Coordinate expressions in t, e.g. \"t,t^2\"");
  s->add_option("--level", sig.level, "Highest level, 1..4")->capture_default_str();
  s->add_option("--dim", sig.dim, "Expected dimension (checked)");
  s->add_option("--grid", sig.grid, "Simpson grid size m")->capture_default_str();
  s->add_option("--out", sig.out, "Write JSON here instead of stdout");

  IntegrateArgs integ;
  auto* in = app.add_subcommand("integrate", "Evaluate one iterated integral");
  in->add_option("--forms", integ.forms, "Forms separated by ';', e.g. \"dx1;x1 dx2\"")->required();
  in->add_option("--limits", integ.limits, "\"s1,...,sk;t\" (default all zero to 1)");
  in->add_option("--path", integ.path, "\"csv:FILE\" or coordinate expressions in t")->required();
  in->add_option("--variations", integ.variations, "Fields separated by ';', each a comma list");
  in->add_option("--grid", integ.grid, "Simpson grid size m")->capture_default_str();
  in->add_option("--dim", integ.dim, "Expected dimension (checked)");
  in->add_option("--out", integ.out, "Write JSON here instead of stdout");

  VerifyArgs ver;
  auto* ve = app.add_subcommand("verify", "Run randomized identity checks");
  ve->add_option("--ids", ver.ids, "Comma-separated identity ids, or all")->capture_default_str();
  ve->add_option("--trials", ver.trials, "Trials per identity")->capture_default_str();
  ve->add_option("--seed", ver.seed, "Random seed")->capture_default_str();
  ve->add_option("--dim", ver.dim, "Base dimension n, 2..4")->capture_default_str();
  ve->add_option("--k", ver.k, "Fixed word length for the general-k identities");
  ve->add_option("--grid", ver.grid, "Simpson grid size m")->capture_default_str();
  ve->add_option("--fd", ver.fd, "Finite-difference step h")->capture_default_str();
  ve->add_flag("--based", ver.based, "Pin endpoints for the based-path identities");
  ve->add_option("--out", ver.out, "Write JSON here instead of stdout");

  BarArgs bar;
  auto* ba = app.add_subcommand("bar", "Bar and Hochschild differentials");
  ba->add_option("--generators", bar.generators, "Generator spec JSON file (or inline JSON array)");
  auto* word_opt = ba->add_option("--word", bar.word, "Word such as \"a|b*c\" or \"L:x|a|R:y\"");
  ba->add_option("--variant", bar.variant, "based or hochschild")->capture_default_str();
  ba->add_flag("--check-d2", bar.check_d2, "Certify that d applied twice vanishes");
  ba->add_option("--random", bar.random, "Certify this many random words");
  ba->add_option("--seed", bar.seed, "Seed for random words")->capture_default_str();
  ba->add_option("--out", bar.out, "Write JSON here instead of stdout");

  std::vector<std::string> argv_store{"chen"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  bar.word_given = word_opt->count() > 0;

  try {
    if (s->parsed()) return cmd_signature(sig, out);
    if (in->parsed()) return cmd_integrate(integ, out);
    if (ve->parsed()) return cmd_verify(ver, out, err);
    return cmd_bar(bar, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "json error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace chen
