#pragma once

// JSON input files describing named sequences, operads, cooperads, entwined
// triples, and bialgebras over Q, plus the inverse direction: canonical
// serialization of the same structures.  Strict loading re-verifies every
// axiom suite and refuses failing structures; lenient loading keeps them and
// records warnings so that deliberately broken fixtures can be exercised.
//
// Conventions: rationals are strings "p/q" (or "p" when the denominator is
// one); matrices are row-major nested arrays; per-arity data is an array
// whose index i holds arity i+1; symmetric-group data lists the matrices of
// the adjacent transpositions per arity.

#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entwine/builtin.hpp"
#include "entwine/entwine.hpp"
#include "entwine/matrix.hpp"
#include "entwine/opcore.hpp"
#include "entwine/rational.hpp"
#include "entwine/rigidity.hpp"
#include "entwine/schur.hpp"
#include "entwine/sequence.hpp"

namespace entwine {

using Json = nlohmann::json;

// Malformed input: unparsable document, missing fields, ill-shaped matrices,
// or (in strict mode) a structure failing its axioms.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// A name that does not resolve to a declared structure.
class UnknownReference : public SpecError {
 public:
  explicit UnknownReference(const std::string& what) : SpecError(what) {}
};

enum class LoadMode { strict, lenient };

struct SpecFile {
  std::size_t max_arity = 0;
  std::vector<std::string> warnings;  // lenient-mode axiom findings

  std::map<std::string, SeqPtr> sequences;

  struct OperadEntry {
    std::string carrier;
    OperadStructure value;
  };
  struct CooperadEntry {
    std::string carrier;
    CooperadStructure value;
  };
  struct EntwiningEntry {
    std::string operad, cooperad;
    Entwining value;
  };
  struct BialgebraEntry {
    std::string entwining;
    Bialgebra value;
  };

  std::map<std::string, OperadEntry> operads;
  std::map<std::string, CooperadEntry> cooperads;
  std::map<std::string, EntwiningEntry> entwinings;
  std::map<std::string, BialgebraEntry> bialgebras;
};

// ---------------------------------------------------------------------------
// Scalar and matrix conversions.

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
  if (!j.is_string()) throw SpecError(where + ": expected a rational string");
  const std::string s = j.get<std::string>();
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw SpecError(where + ": cannot parse rational '" + s + "'");
  }
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols,
                               const std::string& where) {
  if (!j.is_array()) throw SpecError(where + ": expected a matrix (array of rows)");
  if (j.size() != rows && !(j.empty() && rows == 0))
    throw SpecError(where + ": expected " + std::to_string(rows) + " rows, found " +
                    std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw SpecError(where + ": row " + std::to_string(i) + " must have " +
                      std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = rational_from_json(row[c], where + "[" + std::to_string(i) + "]");
  }
  return m;
}

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw SpecError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::size_t size_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& f = field(j, key, where);
  if (!f.is_number_unsigned() || f.get<std::size_t>() == 0)
    throw SpecError(where + ": '" + key + "' must be a positive integer");
  return f.get<std::size_t>();
}

// Per-arity array with exactly max_arity entries.
inline const Json& arity_list(const Json& j, const std::string& key, std::size_t max_arity,
                              const std::string& where) {
  const Json& f = field(j, key, where);
  if (!f.is_array() || f.size() != max_arity)
    throw SpecError(where + ": '" + key + "' must list one entry per arity up to " +
                    std::to_string(max_arity));
  return f;
}

inline SeqMorphism morphism_from_json(const Json& j, const SeqPtr& src, const SeqPtr& tgt,
                                      const std::string& where) {
  std::vector<Matrix> blocks;
  const std::size_t trunc = src->max_arity();
  if (!j.is_array() || j.size() != trunc)
    throw SpecError(where + ": expected one matrix per arity up to " + std::to_string(trunc));
  blocks.reserve(trunc);
  for (std::size_t n = 1; n <= trunc; ++n)
    blocks.push_back(matrix_from_json(j[n - 1], tgt->dim(n), src->dim(n),
                                      where + " arity " + std::to_string(n)));
  try {
    return SeqMorphism(src, tgt, std::move(blocks));
  } catch (const SequenceError& err) {
    throw SpecError(where + ": " + err.what());
  }
}

inline Json morphism_to_json(const SeqMorphism& f) {
  Json out = Json::array();
  for (std::size_t n = 1; n <= f.source()->max_arity(); ++n) out.push_back(matrix_to_json(f.block(n)));
  return out;
}

// Graded linear map stored as its per-grade diagonal blocks.
inline TotalMap total_map_from_json(const Json& j, const std::vector<std::size_t>& src_dims,
                                    const std::vector<std::size_t>& tgt_dims,
                                    const std::string& where) {
  const std::size_t trunc = src_dims.size();
  if (!j.is_array() || j.size() != trunc)
    throw SpecError(where + ": expected one matrix per degree up to " + std::to_string(trunc));
  GradedMap gm;
  gm.blocks.reserve(trunc);
  for (std::size_t n = 1; n <= trunc; ++n)
    gm.blocks.push_back(matrix_from_json(j[n - 1], tgt_dims[n - 1], src_dims[n - 1],
                                         where + " degree " + std::to_string(n)));
  return from_graded(gm);
}

inline Json total_map_to_json(const TotalMap& t) {
  Json out = Json::array();
  for (std::size_t n = 1; n <= t.src_dims.size(); ++n) out.push_back(matrix_to_json(t.block(n, n)));
  return out;
}

template <typename MapT>
const typename MapT::mapped_type& resolve(const MapT& map, const std::string& name,
                                          const std::string& kind) {
  const auto it = map.find(name);
  if (it == map.end()) throw UnknownReference("unknown " + kind + " '" + name + "'");
  return it->second;
}

inline void note(SpecFile& out, LoadMode mode, const std::string& message) {
  if (mode == LoadMode::strict) throw SpecError(message);
  out.warnings.push_back(message);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Loading.

inline SpecFile load_spec(const Json& doc, LoadMode mode, PlethCache& cache) {
  if (!doc.is_object()) throw SpecError("top level: expected an object");
  if (detail::field(doc, "field", "top level") != Json("Q"))
    throw SpecError("top level: only field \"Q\" is supported");
  SpecFile out;
  out.max_arity = detail::size_field(doc, "max_arity", "top level");
  const std::size_t N = out.max_arity;

  if (doc.contains("sequences")) {
    for (const auto& [name, body] : doc.at("sequences").items()) {
      const std::string where = "sequence '" + name + "'";
      const std::string mode_str = detail::field(body, "mode", where).get<std::string>();
      if (mode_str != "symmetric" && mode_str != "nonsymmetric")
        throw SpecError(where + ": mode must be 'symmetric' or 'nonsymmetric'");
      if (detail::size_field(body, "max_arity", where) != N)
        throw SpecError(where + ": max_arity must match the file's max_arity");
      const Json& jdims = detail::arity_list(body, "dims", N, where);
      std::vector<std::size_t> dims;
      for (const Json& d : jdims) {
        if (!d.is_number_unsigned()) throw SpecError(where + ": dims must be nonnegative");
        dims.push_back(d.get<std::size_t>());
      }
      try {
        if (mode_str == "nonsymmetric") {
          out.sequences.emplace(name, std::make_shared<SymmetricSequence>(
                                          SymmetricSequence::nonsymmetric(N, dims)));
        } else {
          const Json& jact = detail::arity_list(body, "actions", N, where);
          std::vector<std::vector<Matrix>> gens(N);
          for (std::size_t n = 1; n <= N; ++n) {
            const Json& per = jact[n - 1];
            const std::size_t expected = n >= 2 ? n - 1 : 0;
            if (!per.is_array() || per.size() != expected)
              throw SpecError(where + ": arity " + std::to_string(n) + " needs " +
                              std::to_string(expected) + " generator matrices");
            for (std::size_t g = 0; g < expected; ++g)
              gens[n - 1].push_back(
                  matrix_from_json(per[g], dims[n - 1], dims[n - 1],
                                   where + " action " + std::to_string(n)));
          }
          out.sequences.emplace(name, std::make_shared<SymmetricSequence>(
                                          SymmetricSequence::symmetric(N, dims, std::move(gens))));
        }
      } catch (const SequenceError& err) {
        throw SpecError(where + ": " + err.what());
      }
    }
  }

  if (doc.contains("operads")) {
    for (const auto& [name, body] : doc.at("operads").items()) {
      const std::string where = "operad '" + name + "'";
      const std::string carrier_name =
          detail::field(body, "carrier", where).get<std::string>();
      const SeqPtr& carrier = detail::resolve(out.sequences, carrier_name, "sequence");
      const SeqPtr unit_seq = builtin::unit_sequence(N, carrier->mode());
      const PlethysmIndex& aa = cache.of(carrier, carrier);
      auto mult = detail::morphism_from_json(detail::field(body, "mult", where), aa.sequence(),
                                             carrier, where + " mult");
      auto unit = detail::morphism_from_json(detail::field(body, "unit", where), unit_seq,
                                             carrier, where + " unit");
      OperadStructure op(carrier, std::move(mult), std::move(unit));
      if (!check_operad(op, cache).ok())
        detail::note(out, mode, where + " fails the monoid axioms");
      out.operads.emplace(name, SpecFile::OperadEntry{carrier_name, std::move(op)});
    }
  }

  if (doc.contains("cooperads")) {
    for (const auto& [name, body] : doc.at("cooperads").items()) {
      const std::string where = "cooperad '" + name + "'";
      const std::string carrier_name =
          detail::field(body, "carrier", where).get<std::string>();
      const SeqPtr& carrier = detail::resolve(out.sequences, carrier_name, "sequence");
      const SeqPtr unit_seq = builtin::unit_sequence(N, carrier->mode());
      const PlethysmIndex& cc = cache.of(carrier, carrier);
      auto comult = detail::morphism_from_json(detail::field(body, "comult", where), carrier,
                                               cc.sequence(), where + " comult");
      auto counit = detail::morphism_from_json(detail::field(body, "counit", where), carrier,
                                               unit_seq, where + " counit");
      CooperadStructure co(carrier, std::move(comult), std::move(counit));
      if (!check_cooperad(co, cache).ok())
        detail::note(out, mode, where + " fails the comonoid axioms");
      out.cooperads.emplace(name, SpecFile::CooperadEntry{carrier_name, std::move(co)});
    }
  }

  if (doc.contains("entwinings")) {
    for (const auto& [name, body] : doc.at("entwinings").items()) {
      const std::string where = "entwining '" + name + "'";
      const std::string op_name = detail::field(body, "operad", where).get<std::string>();
      const std::string co_name = detail::field(body, "cooperad", where).get<std::string>();
      const auto& op = detail::resolve(out.operads, op_name, "operad");
      const auto& co = detail::resolve(out.cooperads, co_name, "cooperad");
      const PlethysmIndex& ac = cache.of(op.value.carrier, co.value.carrier);
      const PlethysmIndex& ca = cache.of(co.value.carrier, op.value.carrier);
      auto lambda = detail::morphism_from_json(detail::field(body, "lambda", where),
                                               ac.sequence(), ca.sequence(), where + " lambda");
      try {
        Entwining e(op.value, co.value, std::move(lambda), cache);
        if (!check_entwining(e, cache).ok())
          detail::note(out, mode, where + " fails the exchange diagrams");
        out.entwinings.emplace(name,
                               SpecFile::EntwiningEntry{op_name, co_name, std::move(e)});
      } catch (const SequenceError& err) {
        throw SpecError(where + ": " + err.what());
      }
    }
  }

  if (doc.contains("bialgebras")) {
    for (const auto& [name, body] : doc.at("bialgebras").items()) {
      const std::string where = "bialgebra '" + name + "'";
      const std::string ent_name = detail::field(body, "entwining", where).get<std::string>();
      const auto& ent = detail::resolve(out.entwinings, ent_name, "entwining");
      const Json& jdim = detail::field(body, "dim", where);
      std::vector<std::size_t> space(N, 0);
      if (jdim.is_number_unsigned()) {
        space[0] = jdim.get<std::size_t>();
      } else if (jdim.is_array() && jdim.size() == N) {
        for (std::size_t n = 0; n < N; ++n) {
          if (!jdim[n].is_number_unsigned()) throw SpecError(where + ": dim must be nonnegative");
          space[n] = jdim[n].get<std::size_t>();
        }
      } else {
        throw SpecError(where + ": dim must be an integer or a per-degree list of length " +
                        std::to_string(N));
      }
      auto a_eval =
          std::make_shared<const GradedEval>(ent.value.op.carrier, space, N);
      auto c_eval =
          std::make_shared<const GradedEval>(ent.value.co.carrier, space, N);
      TotalMap action = detail::total_map_from_json(detail::field(body, "h", where),
                                                    a_eval->dims(), space, where + " h");
      TotalMap coaction = detail::total_map_from_json(detail::field(body, "theta", where), space,
                                                      c_eval->dims(), where + " theta");
      Bialgebra b{ent.value, space, std::move(a_eval), std::move(c_eval), std::move(action),
                  std::move(coaction)};
      if (!check_bimodule(b, cache).ok())
        detail::note(out, mode, where + " fails the bialgebra axioms");
      out.bialgebras.emplace(name, SpecFile::BialgebraEntry{ent_name, std::move(b)});
    }
  }

  return out;
}

inline SpecFile load_spec_text(const std::string& text, LoadMode mode, PlethCache& cache) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw SpecError(std::string("cannot parse input: ") + err.what());
  }
  return load_spec(doc, mode, cache);
}

inline SpecFile load_spec_path(const std::string& path, LoadMode mode, PlethCache& cache) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_spec_text(buffer.str(), mode, cache);
}

// ---------------------------------------------------------------------------
// Serialization.  Output is canonical: keys sorted, two-space indentation,
// rationals as strings, one trailing newline.

inline Json sequence_to_json(const SeqPtr& seq) {
  Json body;
  body["mode"] = seq->mode() == Mode::symmetric ? "symmetric" : "nonsymmetric";
  body["max_arity"] = seq->max_arity();
  Json dims = Json::array();
  for (std::size_t n = 1; n <= seq->max_arity(); ++n) dims.push_back(seq->dim(n));
  body["dims"] = std::move(dims);
  if (seq->mode() == Mode::symmetric) {
    Json actions = Json::array();
    for (std::size_t n = 1; n <= seq->max_arity(); ++n) {
      Json per = Json::array();
      for (std::size_t g = 1; g + 1 <= n; ++g) per.push_back(matrix_to_json(seq->generator(n, g)));
      actions.push_back(std::move(per));
    }
    body["actions"] = std::move(actions);
  }
  return body;
}

inline Json spec_to_json(const SpecFile& spec) {
  Json doc;
  doc["field"] = "Q";
  doc["max_arity"] = spec.max_arity;
  if (!spec.sequences.empty()) {
    Json m;
    for (const auto& [name, seq] : spec.sequences) m[name] = sequence_to_json(seq);
    doc["sequences"] = std::move(m);
  }
  if (!spec.operads.empty()) {
    Json m;
    for (const auto& [name, entry] : spec.operads) {
      Json body;
      body["carrier"] = entry.carrier;
      body["mult"] = detail::morphism_to_json(entry.value.mult);
      body["unit"] = detail::morphism_to_json(entry.value.unit);
      m[name] = std::move(body);
    }
    doc["operads"] = std::move(m);
  }
  if (!spec.cooperads.empty()) {
    Json m;
    for (const auto& [name, entry] : spec.cooperads) {
      Json body;
      body["carrier"] = entry.carrier;
      body["comult"] = detail::morphism_to_json(entry.value.comult);
      body["counit"] = detail::morphism_to_json(entry.value.counit);
      m[name] = std::move(body);
    }
    doc["cooperads"] = std::move(m);
  }
  if (!spec.entwinings.empty()) {
    Json m;
    for (const auto& [name, entry] : spec.entwinings) {
      Json body;
      body["operad"] = entry.operad;
      body["cooperad"] = entry.cooperad;
      body["lambda"] = detail::morphism_to_json(entry.value.lambda);
      m[name] = std::move(body);
    }
    doc["entwinings"] = std::move(m);
  }
  if (!spec.bialgebras.empty()) {
    Json m;
    for (const auto& [name, entry] : spec.bialgebras) {
      Json body;
      body["entwining"] = entry.entwining;
      Json dims = Json::array();
      for (std::size_t d : entry.value.space) dims.push_back(d);
      body["dim"] = std::move(dims);
      body["h"] = detail::total_map_to_json(entry.value.action);
      body["theta"] = detail::total_map_to_json(entry.value.coaction);
      m[name] = std::move(body);
    }
    doc["bialgebras"] = std::move(m);
  }
  return doc;
}

inline std::string serialize_spec(const SpecFile& spec) { return spec_to_json(spec).dump(2) + "\n"; }

}  // namespace entwine
