#include "k3lat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "k3lat/constructions.hpp"
#include "k3lat/criteria.hpp"
#include "k3lat/io.hpp"
#include "k3lat/sublattice.hpp"

namespace k3lat::cli {

namespace {

struct Options {
  std::vector<std::string> inputs;
  int bound = 10;
  std::string out_path;
  std::string check_path;
};

std::string row_string(const RatVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "]";
}

std::string row_string(const IntVector& v) { return row_string(to_rational(v)); }

void print_rows(std::ostream& out, const std::string& key, const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) out << key << "[" << i << "] = " << row_string(m.row(i)) << "\n";
}

Lattice lattice_arg(const std::string& arg) {
  const auto& names = named_lattices();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return make_named(arg);
  return parse_lattice(load_json(arg), arg);
}

SublatticeEmbedding embedding_arg(const std::string& arg) { return parse_embedding(load_json(arg), arg); }

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return kYes;
    case Verdict::no:
      return kNo;
    default:
      return kUnknown;
  }
}

int print_decision(std::ostream& out, const Decision& d, const Options& opt) {
  out << "verdict = " << to_string(d.verdict) << "\n";
  out << "reason = " << d.reason << "\n";
  for (const auto& n : d.notes) out << "note = " << n << "\n";
  if (const auto* e = std::get_if<EmbeddingCertificate>(&d.certificate)) {
    out << "certificate.ambient = U^" << e->image.ambient().rank() / 2 << "\n";
    out << "certificate.primitive = " << (e->primitive ? "true" : "false") << "\n";
    print_rows(out, "certificate.row", e->image.coords());
  } else if (const auto* v = std::get_if<IntVector>(&d.certificate)) {
    out << "certificate.vector = " << row_string(*v) << "\n";
  } else if (const auto* s = std::get_if<ScaleCertificate>(&d.certificate)) {
    out << "certificate.target = " << to_string(s->target) << "\n";
    out << "certificate.scaled = " << to_string(s->scaled) << "\n";
  }
  if (!opt.out_path.empty()) save_json(opt.out_path, decision_to_json(d));
  return exit_for(d.verdict);
}

int print_check(std::ostream& out, bool valid) {
  out << "certificate = " << (valid ? "valid" : "invalid") << "\n";
  return valid ? kYes : kNo;
}

// embed-u3, kummer, product-kummer, shioda-inose
int decision_verb(std::ostream& out, const Options& opt, std::size_t k, bool need_primitive,
                  const std::function<Decision(const Lattice&)>& decide) {
  Lattice t = lattice_arg(opt.inputs.at(0));
  if (!opt.check_path.empty()) {
    Certificate c = parse_certificate(load_json(opt.check_path), opt.check_path + ".certificate");
    const auto* e = std::get_if<EmbeddingCertificate>(&c);
    if (!e) throw InputError(opt.check_path + ".certificate.type: expected an embedding certificate");
    bool valid = check_embedding(t, *e, k) && (!need_primitive || e->primitive);
    return print_check(out, valid);
  }
  return print_decision(out, decide(t), opt);
}

int verb_info(std::ostream& out, const Options& opt) {
  Lattice l = lattice_arg(opt.inputs.at(0));
  out << describe(l) << "\n";
  out << "invariants = " << to_string(invariants(l)) << "\n";
  if (l.is_integral()) {
    auto d = discriminant_group(l);
    std::string f;
    for (const auto& x : d.invariant_factors) f += (f.empty() ? "" : ",") + x.get_str();
    out << "discriminant = [" << f << "]\n";
  }
  print_rows(out, "gram", l.gram());
  if (!opt.out_path.empty()) save_json(opt.out_path, lattice_to_json(l));
  return kYes;
}

int verb_disc(std::ostream& out, const Options& opt) {
  Lattice l = lattice_arg(opt.inputs.at(0));
  auto d = discriminant_group(l);
  out << "invariant_factors = " << row_string(d.invariant_factors) << "\n";
  out << "order = " << d.order() << "\n";
  for (const auto& p : prime_divisors(d.order() == 0 ? Integer(1) : d.order()))
    out << "length[" << p << "] = " << p_length(d, p) << "\n";
  print_rows(out, "generator", d.generators);
  print_rows(out, "bilinear", d.bilinear_values);
  if (d.quadratic_values) out << "quadratic = " << row_string(*d.quadratic_values) << "\n";
  return kYes;
}

int verb_dual(std::ostream& out, const Options& opt) {
  Lattice l = lattice_arg(opt.inputs.at(0));
  SublatticeEmbedding d = dual(l);
  out << "index = " << to_string(abs(determinant(l))) << "\n";
  print_rows(out, "row", d.coords());
  print_rows(out, "gram", d.gram());
  if (!opt.out_path.empty()) save_json(opt.out_path, embedding_to_json(d));
  return kYes;
}

int verb_isotropic(std::ostream& out, const Options& opt) {
  Lattice l = lattice_arg(opt.inputs.at(0));
  if (!opt.check_path.empty()) {
    Certificate c = parse_certificate(load_json(opt.check_path), opt.check_path + ".certificate");
    const auto* v = std::get_if<IntVector>(&c);
    if (!v) throw InputError(opt.check_path + ".certificate.type: expected an isotropic certificate");
    return print_check(out, check_isotropic(l, *v));
  }
  const bool iso = is_isotropic(l);
  out << "isotropic = " << (iso ? "yes" : "no") << "\n";
  out << "witt_index = " << witt_index(l) << "\n";
  auto search = find_isotropic(l, SearchBudget{opt.bound});
  out << "search = " << search.tag << "\n";
  Decision d;
  d.verdict = iso ? Verdict::yes : Verdict::no;
  d.reason = search.tag;
  if (search.vector) {
    out << "vector = " << row_string(*search.vector) << "\n";
    d.certificate = *search.vector;
  } else if (iso) {
    auto exact = isotropic_vector(l);
    out << "vector = " << row_string(*exact) << "\n";
    d.certificate = *exact;
    d.reason = "exact";
  }
  if (!opt.out_path.empty()) save_json(opt.out_path, decision_to_json(d));
  return iso ? kYes : kNo;
}

int verb_equiv(std::ostream& out, const Options& opt) {
  Lattice a = lattice_arg(opt.inputs.at(0));
  Lattice b = lattice_arg(opt.inputs.at(1));
  const bool eq = equivalent(a, b);
  out << "equivalent = " << (eq ? "yes" : "no") << "\n";
  out << "invariants[0] = " << to_string(invariants(a)) << "\n";
  out << "invariants[1] = " << to_string(invariants(b)) << "\n";
  return eq ? kYes : kNo;
}

int verb_similar(std::ostream& out, const Options& opt) {
  Lattice a = lattice_arg(opt.inputs.at(0));
  Lattice b = lattice_arg(opt.inputs.at(1));
  if (!opt.check_path.empty()) {
    Certificate c = parse_certificate(load_json(opt.check_path), opt.check_path + ".certificate");
    const auto* s = std::get_if<ScaleCertificate>(&c);
    if (!s) throw InputError(opt.check_path + ".certificate.type: expected a scale certificate");
    return print_check(out, check_scale(a, b, *s));
  }
  Decision d = isogeny_scale(a, b);
  if (const auto* s = std::get_if<ScaleCertificate>(&d.certificate))
    out << "n = " << s->n << "\n";
  else
    out << "n = none\n";
  return print_decision(out, d, opt);
}

int verb_quotient(std::ostream& out, const Options& opt) {
  SublatticeEmbedding s = embedding_arg(opt.inputs.at(0));
  QuotientReport r = nikulin_quotient(s);
  out << "quotient = " << describe(r.quotient) << "\n";
  out << "fingerprint = " << to_string(fingerprint(r.quotient)) << "\n";
  out << "chain.source_in_quotient = " << (r.source_in_quotient ? "true" : "false") << "\n";
  out << "chain.double_in_source = " << (r.double_in_source ? "true" : "false") << "\n";
  out << "intersection_is_half = " << (r.intersection_is_half ? "true" : "false") << "\n";
  print_rows(out, "intersection.row", r.intersection.coords());
  print_rows(out, "gram", r.quotient.gram());
  if (!opt.out_path.empty()) save_json(opt.out_path, lattice_to_json(r.quotient));
  return r.source_in_quotient && r.double_in_source ? kYes : kNo;
}

int verb_sandwich(std::ostream& out, const Options& opt) {
  SublatticeEmbedding t = embedding_arg(opt.inputs.at(0));
  SublatticeEmbedding image = sandwich_embedding(t);
  const bool in_dual = same_lattice(intersect_with_scaled_dual(image, 2), image);
  const bool primitive = is_primitive(image);
  const bool doubled = image.gram() == scale(t.lattice(), 2).gram();
  out << "in_2_lambda1 = " << (in_dual ? "true" : "false") << "\n";
  out << "primitive = " << (primitive ? "true" : "false") << "\n";
  out << "gram_is_double = " << (doubled ? "true" : "false") << "\n";
  print_rows(out, "row", image.coords());
  if (!opt.out_path.empty()) save_json(opt.out_path, embedding_to_json(image));
  return in_dual && primitive && doubled ? kYes : kNo;
}

int verb_obstruction(std::ostream& out, const Options& opt) {
  Lattice m = lattice_arg(opt.inputs.at(0));
  ObstructionReport r = double_quotient_obstruction(m);
  out << "verdict = " << (r.obstructed ? "obstructed" : "inconclusive") << "\n";
  out << "reason = " << r.reason << "\n";
  out << "pairings_even = " << (r.pairings_even ? "true" : "false") << "\n";
  out << "two_length = " << r.two_length << "\n";
  out << "bound = " << r.bound << "\n";
  return r.obstructed ? kYes : kUnknown;
}

int verb_verify(std::ostream& out, const Options&) {
  bool all = true;
  for (const Report& r : {verify_u2_cube_sublattice(), verify_double_cover()}) {
    out << "# " << r.title << "\n";
    for (const auto& c : r.checks) {
      out << (c.passed ? "[ok]   " : "[FAIL] ") << c.name;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << "\n";
    }
    all = all && r.passed();
  }
  out << "result = " << (all ? "pass" : "fail") << "\n";
  return all ? kYes : kNo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice and quadratic-form toolkit for K3 and Kummer criteria", "k3lat"};
  app.require_subcommand(1);
  Options opt;

  struct Verb {
    const char* name;
    const char* help;
    int arity;
    bool bound;
    bool check;
    std::function<int(std::ostream&, const Options&)> action;
  };
  const SearchBudget defaults;
  auto si = [](const Options& o) {
    return [b = o.bound](const Lattice& t) { return shioda_inose(t, SearchBudget{b}); };
  };
  const std::vector<Verb> verbs{
      {"info", "describe a lattice", 1, false, false, verb_info},
      {"disc", "discriminant group and its forms", 1, false, false, verb_disc},
      {"dual", "dual lattice as coordinates", 1, false, false, verb_dual},
      {"isotropic", "isotropy test and a null vector", 1, true, true, verb_isotropic},
      {"equiv", "rational equivalence of two forms", 2, false, false, verb_equiv},
      {"similar", "least scale n with A ~ B(n) over Q", 2, false, true, verb_similar},
      {"embed-u3", "embedding into U^3", 1, false, true,
       [](std::ostream& o, const Options& p) { return decision_verb(o, p, 3, false, embed_in_U3); }},
      {"kummer", "Kummer dominance (embedding into U^3)", 1, false, true,
       [](std::ostream& o, const Options& p) { return decision_verb(o, p, 3, false, kummer_dominance); }},
      {"product-kummer", "product Kummer dominance (embedding into U^2)", 1, false, true,
       [](std::ostream& o, const Options& p) { return decision_verb(o, p, 2, false, product_kummer_dominance); }},
      {"shioda-inose", "primitive embedding into U^3", 1, true, true,
       [si](std::ostream& o, const Options& p) { return decision_verb(o, p, 3, true, si(p)); }},
      {"quotient", "Nikulin quotient of a sublattice of Lambda0", 1, false, false, verb_quotient},
      {"sandwich", "image of T(2) in Lambda0 for T inside U^3", 1, false, false, verb_sandwich},
      {"obstruction", "2-length obstruction for M", 1, false, false, verb_obstruction},
      {"verify-paper", "verify the built-in explicit constructions", 0, false, false, verb_verify},
  };

  std::vector<std::pair<CLI::App*, const Verb*>> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    if (v.arity > 0) sub->add_option("inputs", opt.inputs, "lattice name or JSON file")->required()->expected(v.arity);
    if (v.bound) sub->add_option("--bound", opt.bound, "search height bound")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_path, "write the result as JSON");
    if (v.check) sub->add_option("--check", opt.check_path, "re-validate a certificate file");
    subs.emplace_back(sub, &v);
  }
  opt.bound = defaults.height_bound;

  std::vector<const char*> argv{"k3lat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  for (const auto& [sub, verb] : subs) {
    if (!sub->parsed()) continue;
    try {
      return verb->action(out, opt);
    } catch (const InputError& e) {
      err << "input error: " << e.what() << "\n";
      return kInputError;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return kInputError;
}

}  // namespace k3lat::cli
