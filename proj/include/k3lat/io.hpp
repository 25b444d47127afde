#pragma once

// JSON file formats.
//
//   lattice:   {"name": "U"}  or  {"gram": [[0, 1], [1, 0]]}
//   embedding: {"ambient": <lattice or name>, "rows": [[...], ...]}
//
// A rational is a JSON integer or a string "p/q" (or "n" for large integers).

#include <string>

#include <json.hpp>

#include "k3lat/criteria.hpp"

namespace k3lat {

using Json = nlohmann::json;

/// Malformed input; the message names the offending field.
class InputError : public Error {
 public:
  using Error::Error;
};

Rational parse_rational(const Json& j, const std::string& field);
Json rational_to_json(const Rational& q);

Lattice parse_lattice(const Json& j, const std::string& field = "lattice");
Json lattice_to_json(const Lattice& l);

SublatticeEmbedding parse_embedding(const Json& j, const std::string& field = "embedding");
Json embedding_to_json(const SublatticeEmbedding& s);

Json invariants_to_json(const FormInvariants& inv);
FormInvariants parse_invariants(const Json& j, const std::string& field);

Json decision_to_json(const Decision& d);
/// Reads back the certificate of a decision document.
Certificate parse_certificate(const Json& j, const std::string& field = "certificate");

/// Reads and parses a JSON file; throws InputError on I/O or syntax errors.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace k3lat
