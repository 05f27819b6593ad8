#include "dposet/serialize.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace dposet {

Json to_json(const Integer& v) { return to_string(v); }

Integer integer_from_json(const Json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.get<long long>());
  throw InvalidInput("expected an integer or a decimal string");
}

Json to_json(const IntMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    data.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace {

template <typename Scalar, typename Parse>
Matrix<Scalar> read_matrix(const Json& j, Parse parse) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const Json& data = j.at("data");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows)
    throw InvalidInput("matrix JSON: row count mismatch");
  Matrix<Scalar> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = data.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidInput("matrix JSON: column count mismatch");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = parse(row.at(static_cast<std::size_t>(c)));
  }
  return m;
}

}  // namespace

IntMatrix matrix_from_json(const Json& j) { return read_matrix<Integer>(j, integer_from_json); }

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

IntVector vector_from_json(const Json& j) {
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer_from_json(j[i]);
  return v;
}

Json to_json(const IntPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
  return Json{{"coeffs", std::move(coeffs)}};
}

IntPoly poly_from_json(const Json& j) {
  std::vector<Integer> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(integer_from_json(c));
  IntPoly p(coeffs);
  if (p.coeffs().size() != coeffs.size()) throw InvalidInput("polynomial JSON has trailing zeros");
  return p;
}

Json to_json(const PolyMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    data.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

PolyMatrix poly_matrix_from_json(const Json& j) { return read_matrix<IntPoly>(j, poly_from_json); }

Json to_json(const SNFCertificate& c) {
  Json diag = Json::array();
  for (const auto& d : c.diag) diag.push_back(to_string(d));
  return Json{{"P", to_json(c.P)}, {"D", to_json(c.D)}, {"Q", to_json(c.Q)}, {"diag", diag}};
}

Json to_json(const PolySNFCertificate& c) {
  Json diag = Json::array();
  for (const auto& d : c.diag) diag.push_back(to_json(d));
  return Json{{"P", to_json(c.P)}, {"D", to_json(c.D)}, {"Q", to_json(c.Q)}, {"diag", diag}};
}

PolySNFCertificate poly_certificate_from_json(const Json& j) {
  PolySNFCertificate c;
  c.P = poly_matrix_from_json(j.at("P"));
  c.D = poly_matrix_from_json(j.at("D"));
  c.Q = poly_matrix_from_json(j.at("Q"));
  for (const auto& d : j.at("diag")) c.diag.push_back(poly_from_json(d));
  return c;
}

Json to_json(const RCFDecomposition& d) {
  Json gens = Json::array(), anns = Json::array();
  for (const auto& g : d.generators) gens.push_back(to_json(g));
  for (const auto& a : d.annihilators) anns.push_back(to_json(a));
  return Json{{"operator", to_json(d.op)},
              {"generators", gens},
              {"annihilators", anns},
              {"basis", to_json(d.basis)}};
}

Json to_json(const Factorization& f) {
  Json out = Json::array();
  for (const auto& [root, mult] : f) out.push_back(Json{{"root", to_string(root)}, {"multiplicity", mult}});
  return out;
}

Json to_json(const AxiomReport& r) {
  Json out{{"r", r.r}, {"n_max", r.n_max}, {"pass", r.pass}};
  if (r.violation) {
    const auto& v = *r.violation;
    out["violation"] = Json{{"n", v.n},
                            {"row", v.row},
                            {"col", v.col},
                            {"expected", to_string(v.expected)},
                            {"actual", to_string(v.actual)}};
  }
  return out;
}

Json to_json(const SurjectivityReport& r) {
  Json recs = Json::array();
  for (const auto& x : r.records)
    recs.push_back(Json{{"n", x.n},
                        {"down_surjective", x.down_surjective},
                        {"up_free_cokernel", x.up_free_cokernel}});
  Json out{{"all_surjective", r.all_surjective()}, {"consistent", r.consistent}, {"records", recs}};
  out["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
  return out;
}

Json to_json(const RankInequalityReport& r) {
  Json recs = Json::array();
  for (const auto& x : r.records)
    recs.push_back(Json{{"n", x.n}, {"lhs", x.lhs}, {"rhs", x.rhs}, {"holds", x.holds}});
  Json out{{"l", r.l}, {"n_max", r.n_max}, {"holds", r.holds()}, {"records", recs}};
  out["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
  return out;
}

Json to_json(const AuxiliaryReport& r) {
  Json recs = Json::array();
  for (const auto& x : r.records)
    recs.push_back(Json{{"n", x.n},
                        {x.lhs_name, to_string(x.lhs)},
                        {x.rhs_name, to_string(x.rhs)},
                        {"holds", x.holds}});
  return Json{{"kind", r.kind}, {"holds", r.holds()}, {"records", recs}};
}

Json to_json(const Obstruction& o) {
  Json out{{"code", to_string(o.code)}, {"n", o.n}, {"detail", o.detail}};
  if (o.congruence_holds) out["congruence_holds"] = *o.congruence_holds;
  return out;
}

Obstruction obstruction_from_json(const Json& j) {
  Obstruction o;
  const auto code = j.at("code").get<std::string>();
  for (auto c : {ObstructionCode::GcdObstruction, ObstructionCode::RankEqualityObstruction,
                 ObstructionCode::BaseSearchFailure, ObstructionCode::NonSurjectiveDownMap,
                 ObstructionCode::Internal})
    if (code == to_string(c)) o.code = c;
  o.n = j.at("n").get<int>();
  o.detail = j.at("detail").get<std::string>();
  if (j.contains("congruence_holds")) o.congruence_holds = j["congruence_holds"].get<bool>();
  return o;
}

Json to_json(const RankRecord& r, bool with_timing) {
  Json gens = Json::array(), anns = Json::array(), diag = Json::array(), obs = Json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  for (const auto& a : r.annihilators) anns.push_back(to_json(a));
  for (const auto& d : r.diagonal) diag.push_back(to_json(d));
  for (const auto& o : r.obstructions) obs.push_back(to_json(o));
  Json out{{"n", r.n},
           {"p_n", r.p_n},
           {"delta", r.delta},
           {"method", r.method},
           {"pass", r.pass()},
           {"rcf", r.rcf_pass ? "pass" : "fail"},
           {"certificate", r.certificate_pass ? "pass" : "fail"},
           {"matches_prediction", r.matches_prediction ? "yes" : "no"},
           {"annihilators_match", r.annihilators_match},
           {"ds_consistent", r.ds_consistent},
           {"annihilators", anns},
           {"generators", gens},
           {"diagonal", diag},
           {"obstructions", obs}};
  if (r.certificate) out["snf_certificate"] = to_json(*r.certificate);
  if (with_timing) out["seconds"] = r.seconds;
  return out;
}

RankRecord rank_record_from_json(const Json& j) {
  RankRecord r;
  r.n = j.at("n").get<int>();
  r.p_n = j.at("p_n").get<std::size_t>();
  r.delta = j.at("delta").get<long>();
  r.method = j.at("method").get<std::string>();
  r.rcf_pass = j.at("rcf").get<std::string>() == "pass";
  r.certificate_pass = j.at("certificate").get<std::string>() == "pass";
  r.matches_prediction = j.at("matches_prediction").get<std::string>() == "yes";
  r.annihilators_match = j.at("annihilators_match").get<bool>();
  r.ds_consistent = j.at("ds_consistent").get<bool>();
  for (const auto& g : j.at("generators")) r.generators.push_back(vector_from_json(g));
  for (const auto& a : j.at("annihilators")) r.annihilators.push_back(poly_from_json(a));
  for (const auto& d : j.at("diagonal")) r.diagonal.push_back(poly_from_json(d));
  for (const auto& o : j.at("obstructions")) r.obstructions.push_back(obstruction_from_json(o));
  if (j.contains("snf_certificate")) r.certificate = poly_certificate_from_json(j["snf_certificate"]);
  if (j.contains("seconds")) r.seconds = j["seconds"].get<double>();
  return r;
}

Json report_header(const std::string& command, const std::string& spec) {
  return Json{{"tool", "dposet"},
              {"version", kVersion},
              {"command", command},
              {"spec", spec},
              {"convention", to_string(Convention::APlusX)}};
}

Json to_json(const ConjectureReport& r, bool with_timing) {
  Json recs = Json::array();
  for (const auto& x : r.records) recs.push_back(to_json(x, with_timing));
  Json out = report_header("verify", r.spec);
  out["n_max"] = r.n_max;
  out["l"] = r.l;
  out["seed"] = r.seed;
  out["all_pass"] = r.all_pass();
  out["records"] = std::move(recs);
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path Cache::path_for(const std::string& spec, const std::string& kind,
                                      int n) const {
  std::string name;
  for (char c : spec + "." + kind)
    name.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_');
  // the hash keeps distinct specs apart after sanitizing
  name += "." + std::to_string(n) + "." + sha256_hex(spec + "\n" + kind).substr(0, 12) + ".json";
  return dir_ / name;
}

std::optional<Json> Cache::get(const std::string& spec, const std::string& kind, int n) const {
  std::ifstream in(path_for(spec, kind, n));
  if (!in) return std::nullopt;
  try {
    Json entry = Json::parse(in);
    const Json& payload = entry.at("payload");
    if (entry.at("sha256").get<std::string>() != sha256_hex(payload.dump())) return std::nullopt;
    if (entry.at("spec") != spec || entry.at("kind") != kind || entry.at("n") != n)
      return std::nullopt;
    return payload;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::put(const std::string& spec, const std::string& kind, int n, const Json& payload) const {
  std::filesystem::create_directories(dir_);
  const auto path = path_for(spec, kind, n);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    Json entry{{"spec", spec},
               {"kind", kind},
               {"n", n},
               {"sha256", sha256_hex(payload.dump())},
               {"payload", payload}};
    out << entry.dump();
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dposet
