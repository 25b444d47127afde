#include "k3lat/io.hpp"

#include <fstream>
#include <regex>

namespace k3lat {

namespace {

const Json& member(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) throw InputError(field + ": missing \"" + key + "\"");
  return j.at(key);
}

RatMatrix parse_matrix(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of rows");
  std::vector<RatVector> rows;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    const Json& row = j[i];
    if (!row.is_array()) throw InputError(rf + ": expected an array");
    if (i == 0) cols = row.size();
    if (row.size() != cols) throw InputError(rf + ": row length differs from row 0");
    RatVector r;
    for (std::size_t k = 0; k < row.size(); ++k) r.push_back(parse_rational(row[k], rf + "[" + std::to_string(k) + "]"));
    rows.push_back(std::move(r));
  }
  return RatMatrix::from_rows(rows, cols);
}

Json matrix_to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_json(Rational(x)));
  return out;
}

Lattice lattice_or_name(const Json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return make_named(j.get<std::string>());
    } catch (const Error& e) {
      throw InputError(field + ": " + e.what());
    }
  }
  return parse_lattice(j, field);
}

}  // namespace

Rational parse_rational(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
  if (!j.is_string()) throw InputError(field + ": expected an integer or a \"p/q\" string");
  static const std::regex kPattern(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?)");
  const std::string s = j.get<std::string>();
  std::smatch m;
  if (!std::regex_match(s, m, kPattern)) throw InputError(field + ": malformed rational \"" + s + "\"");
  Integer num(m[1].str());
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (den == 0) throw InputError(field + ": zero denominator");
  return make_rational(num, den);
}

Json rational_to_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

Lattice parse_lattice(const Json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field + ": expected an object");
  if (j.contains("name")) {
    const Json& name = j.at("name");
    if (!name.is_string()) throw InputError(field + ".name: expected a string");
    try {
      return make_named(name.get<std::string>());
    } catch (const Error& e) {
      throw InputError(field + ".name: " + e.what());
    }
  }
  RatMatrix g = parse_matrix(member(j, "gram", field), field + ".gram");
  if (g.rows() != g.cols()) throw InputError(field + ".gram: matrix is not square");
  if (!is_symmetric(g)) throw InputError(field + ".gram: matrix is not symmetric");
  if (determinant(g) == 0) throw InputError(field + ".gram: matrix is degenerate");
  return Lattice(g);
}

Json lattice_to_json(const Lattice& l) { return Json{{"gram", matrix_to_json(l.gram())}}; }

SublatticeEmbedding parse_embedding(const Json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field + ": expected an object");
  Lattice ambient = lattice_or_name(member(j, "ambient", field), field + ".ambient");
  RatMatrix rows = parse_matrix(member(j, "rows", field), field + ".rows");
  if (rows.rows() > 0 && rows.cols() != ambient.rank())
    throw InputError(field + ".rows: row length does not match the ambient rank");
  try {
    return SublatticeEmbedding(ambient, rows);
  } catch (const Error& e) {
    throw InputError(field + ".rows: " + e.what());
  }
}

Json embedding_to_json(const SublatticeEmbedding& s) {
  return Json{{"ambient", lattice_to_json(s.ambient())}, {"rows", matrix_to_json(s.coords())}};
}

Json invariants_to_json(const FormInvariants& inv) {
  Json hasse = Json::array();
  for (const auto& p : inv.hasse) hasse.push_back(rational_to_json(Rational(p)));
  return Json{{"rank", inv.rank},
              {"det_class", rational_to_json(Rational(inv.det_class))},
              {"sig", Json::array({inv.sig.positive, inv.sig.negative})},
              {"hasse", hasse}};
}

FormInvariants parse_invariants(const Json& j, const std::string& field) {
  FormInvariants inv;
  const Json& rank = member(j, "rank", field);
  if (!rank.is_number_unsigned()) throw InputError(field + ".rank: expected a nonnegative integer");
  inv.rank = rank.get<std::size_t>();
  Rational d = parse_rational(member(j, "det_class", field), field + ".det_class");
  if (!is_integer(d)) throw InputError(field + ".det_class: expected an integer");
  inv.det_class = d.get_num();
  const Json& sig = member(j, "sig", field);
  if (!sig.is_array() || sig.size() != 2 || !sig[0].is_number_integer() || !sig[1].is_number_integer())
    throw InputError(field + ".sig: expected [p, q]");
  inv.sig = {sig[0].get<int>(), sig[1].get<int>()};
  const Json& hasse = member(j, "hasse", field);
  if (!hasse.is_array()) throw InputError(field + ".hasse: expected an array");
  for (std::size_t i = 0; i < hasse.size(); ++i) {
    Rational p = parse_rational(hasse[i], field + ".hasse[" + std::to_string(i) + "]");
    if (!is_integer(p)) throw InputError(field + ".hasse: expected integers");
    inv.hasse.push_back(p.get_num());
  }
  return inv;
}

Json decision_to_json(const Decision& d) {
  Json out{{"verdict", to_string(d.verdict)}, {"reason", d.reason}};
  if (!d.notes.empty()) out["notes"] = d.notes;
  if (const auto* e = std::get_if<EmbeddingCertificate>(&d.certificate)) {
    Json c = embedding_to_json(e->image);
    c["type"] = "embedding";
    c["primitive"] = e->primitive;
    out["certificate"] = c;
  } else if (const auto* v = std::get_if<IntVector>(&d.certificate)) {
    out["certificate"] = Json{{"type", "isotropic"}, {"vector", vector_to_json(*v)}};
  } else if (const auto* s = std::get_if<ScaleCertificate>(&d.certificate)) {
    out["certificate"] = Json{{"type", "scale"},
                              {"n", rational_to_json(Rational(s->n))},
                              {"target", invariants_to_json(s->target)},
                              {"scaled", invariants_to_json(s->scaled)}};
  }
  return out;
}

Certificate parse_certificate(const Json& doc, const std::string& field) {
  const Json& j = member(doc, "certificate", "decision");
  const std::string& f = field;
  const Json& type = member(j, "type", f);
  if (!type.is_string()) throw InputError(f + ".type: expected a string");
  const std::string t = type.get<std::string>();
  if (t == "embedding") {
    const Json& prim = member(j, "primitive", f);
    if (!prim.is_boolean()) throw InputError(f + ".primitive: expected a boolean");
    return EmbeddingCertificate{parse_embedding(j, f), prim.get<bool>()};
  }
  if (t == "isotropic") {
    const Json& v = member(j, "vector", f);
    if (!v.is_array()) throw InputError(f + ".vector: expected an array");
    IntVector out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Rational x = parse_rational(v[i], f + ".vector[" + std::to_string(i) + "]");
      if (!is_integer(x)) throw InputError(f + ".vector: expected integers");
      out.push_back(x.get_num());
    }
    return out;
  }
  if (t == "scale") {
    Rational n = parse_rational(member(j, "n", f), f + ".n");
    if (!is_integer(n)) throw InputError(f + ".n: expected an integer");
    return ScaleCertificate{n.get_num(), parse_invariants(member(j, "target", f), f + ".target"),
                            parse_invariants(member(j, "scaled", f), f + ".scaled")};
  }
  throw InputError(f + ".type: unknown certificate type \"" + t + "\"");
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write file");
  out << j.dump(2) << "\n";
}

}  // namespace k3lat
