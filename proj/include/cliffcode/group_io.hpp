#pragma once

// Group definition files.
//
//   {
//     "name": "qutrit-weyl",
//     "conductor": 3,
//     "degree": 3,
//     "tensor_factors": [3],            optional
//     "cap": 100000,                    optional closure cap
//     "generators": [ M1, M2, ... ]
//   }
//
// Each generator is a degree x degree array of entries; an entry is a list of
// terms [num, den, k] standing for num/den * zeta_conductor^k (an empty list
// is zero). Integers may also be given as JSON strings for big values.

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliffcode/cyclotomic.hpp"
#include "cliffcode/errors.hpp"
#include "cliffcode/matrix.hpp"
#include "cliffcode/representation.hpp"

namespace cliffcode {

namespace detail {

inline BigInt json_bigint(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InvalidArgument(where + ": expected an integer");
}

inline CycNum json_entry(const nlohmann::json& v, int conductor, const std::string& where) {
  if (!v.is_array()) throw InvalidArgument(where + ": entry must be a list of [num, den, k] terms");
  std::vector<CycNum::Term> terms;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const auto& term = v[t];
    const std::string at = where + " term " + std::to_string(t);
    if (!term.is_array() || term.size() != 3 || !term[2].is_number_integer()) {
      throw InvalidArgument(at + ": expected [num, den, k]");
    }
    BigInt den = json_bigint(term[1], at);
    if (den == 0) throw InvalidArgument(at + ": zero denominator");
    terms.push_back({json_bigint(term[0], at), std::move(den), term[2].get<long long>()});
  }
  return CycNum::from_terms(conductor, terms);
}

}  // namespace detail

inline nlohmann::json cycnum_to_json(const CycNum& v, int conductor) {
  auto out = nlohmann::json::array();
  for (const auto& t : v.terms(conductor)) {
    const auto small = [](const BigInt& b) -> nlohmann::json {
      if (b >= std::numeric_limits<long long>::min() && b <= std::numeric_limits<long long>::max()) {
        return static_cast<long long>(b);
      }
      return b.str();
    };
    out.push_back({small(t.num), small(t.den), t.exponent});
  }
  return out;
}

inline nlohmann::json matrix_to_json(const CycMatrix& m, int conductor) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(cycnum_to_json(m.at(i, j), conductor));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CycMatrix matrix_from_json(const nlohmann::json& v, std::size_t degree, int conductor, const std::string& where) {
  if (!v.is_array() || v.size() != degree) {
    throw InvalidArgument(where + ": expected " + std::to_string(degree) + " rows");
  }
  std::vector<std::vector<CycNum>> dense(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    if (!v[i].is_array() || v[i].size() != degree) {
      throw InvalidArgument(where + " row " + std::to_string(i) + ": expected " + std::to_string(degree) + " entries");
    }
    for (std::size_t j = 0; j < degree; ++j) {
      dense[i].push_back(detail::json_entry(v[i][j], conductor,
                                            where + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")"));
    }
  }
  return CycMatrix::from_dense(dense);
}

inline UnitaryRep group_from_json(const nlohmann::json& doc, std::size_t default_cap = 100000) {
  if (!doc.is_object()) throw InvalidArgument("group file: top level must be an object");
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!doc.contains(key)) throw InvalidArgument(std::string("group file: missing \"") + key + "\"");
    return doc.at(key);
  };
  const auto& cond = need("conductor");
  const auto& deg = need("degree");
  const auto& gens = need("generators");
  if (!cond.is_number_integer() || cond.get<long long>() < 1) {
    throw InvalidArgument("group file: conductor must be a positive integer");
  }
  if (!deg.is_number_integer() || deg.get<long long>() < 1) {
    throw InvalidArgument("group file: degree must be a positive integer");
  }
  if (!gens.is_array() || gens.empty()) throw InvalidArgument("group file: generators must be a nonempty list");
  const int conductor = cond.get<int>();
  if (conductor > conductor_cap()) throw CapExceeded("group file: conductor exceeds cap");
  const auto degree = deg.get<std::size_t>();

  ClosureOptions opts;
  opts.cap = default_cap;
  opts.name = doc.value("name", std::string("file"));
  if (doc.contains("cap")) {
    if (!doc["cap"].is_number_unsigned()) throw InvalidArgument("group file: cap must be a positive integer");
    opts.cap = doc["cap"].get<std::size_t>();
  }
  if (doc.contains("tensor_factors")) {
    const auto& tf = doc["tensor_factors"];
    if (!tf.is_array()) throw InvalidArgument("group file: tensor_factors must be a list");
    std::vector<int> dims;
    for (const auto& d : tf) {
      if (!d.is_number_integer()) throw InvalidArgument("group file: tensor_factors must hold integers");
      dims.push_back(d.get<int>());
    }
    opts.tensor_factors = std::move(dims);
  }
  std::vector<CycMatrix> mats;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    mats.push_back(matrix_from_json(gens[k], degree, conductor, "generator " + std::to_string(k)));
  }
  return group_closure(mats, opts);
}

inline UnitaryRep load_group_file(const std::string& path, std::size_t default_cap = 100000) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open group file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidArgument("group file '" + path + "' is not valid JSON: " + ex.what());
  }
  try {
    return group_from_json(doc, default_cap);
  } catch (const InvalidArgument& ex) {
    throw InvalidArgument("'" + path + "': " + ex.what());
  }
}

/// pauli:n, weyl:d:n or file:PATH.
inline UnitaryRep load_group(const std::string& spec, std::size_t closure_cap = 100000) {
  if (spec.rfind("file:", 0) == 0) return load_group_file(spec.substr(5), closure_cap);
  return builtin_group(spec, closure_cap);
}

}  // namespace cliffcode
