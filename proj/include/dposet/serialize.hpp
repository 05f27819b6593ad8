#pragma once

#include "dposet/rcf.hpp"
#include "dposet/theory.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace dposet {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

Json to_json(const Integer& v);
Integer integer_from_json(const Json& j);
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
Json to_json(const IntPoly& p);
IntPoly poly_from_json(const Json& j);
Json to_json(const PolyMatrix& m);
PolyMatrix poly_matrix_from_json(const Json& j);

Json to_json(const SNFCertificate& c);
Json to_json(const PolySNFCertificate& c);
PolySNFCertificate poly_certificate_from_json(const Json& j);
Json to_json(const RCFDecomposition& d);

Json to_json(const Factorization& f);
Json to_json(const AxiomReport& r);
Json to_json(const SurjectivityReport& r);
Json to_json(const RankInequalityReport& r);
Json to_json(const AuxiliaryReport& r);
Json to_json(const Obstruction& o);
Obstruction obstruction_from_json(const Json& j);

/// Round-trips everything except timing, which is only written on request.
Json to_json(const RankRecord& r, bool with_timing);
RankRecord rank_record_from_json(const Json& j);
Json to_json(const ConjectureReport& r, bool with_timing);

/// Report header shared by every command.
Json report_header(const std::string& command, const std::string& spec);

std::string sha256_hex(const std::string& data);

/// One JSON file per (spec, kind, n) holding the payload and its SHA-256.
/// Entries whose hash does not match are ignored, so a corrupt cache only
/// costs a recomputation.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);
  std::optional<Json> get(const std::string& spec, const std::string& kind, int n) const;
  void put(const std::string& spec, const std::string& kind, int n, const Json& payload) const;
  std::filesystem::path path_for(const std::string& spec, const std::string& kind, int n) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace dposet
