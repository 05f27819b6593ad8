#include "dposet/serialize.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace dposet;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dposet_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Json, MatrixFormatUsesDecimalStrings) {
  IntMatrix m(2, 2);
  m << 2, 1, 1, 2;
  m(0, 0) = parse_integer("-123456789012345678901234567890");
  const Json j = to_json(m);
  EXPECT_EQ(j.dump(), R"({"rows":2,"cols":2,"data":[["-123456789012345678901234567890","1"],["1","2"]]})");
  EXPECT_EQ(matrix_from_json(j), m);
  EXPECT_EQ(matrix_from_json(to_json(IntMatrix(0, 3))).cols(), 3);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":2,"cols":1,"data":[["1"]]})")),
               InvalidInput);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[["x"]]})")),
               InvalidInput);
}

TEST(Json, PolynomialsAndPolyMatrices) {
  const auto p = IntPoly::from_values({3, -4, 1});
  EXPECT_EQ(to_json(p).dump(), R"({"coeffs":["3","-4","1"]})");
  EXPECT_EQ(poly_from_json(to_json(p)), p);
  EXPECT_EQ(to_json(IntPoly()).dump(), R"({"coeffs":[]})");
  EXPECT_THROW(poly_from_json(Json::parse(R"({"coeffs":["1","0"]})")), InvalidInput);
  PolyMatrix m(1, 2);
  m << p, IntPoly::x();
  EXPECT_EQ(poly_matrix_from_json(to_json(m)), m);
}

TEST(Json, CertificateAndRecordRoundTrip) {
  Poset y(young_spec());
  VerifyOptions opt;
  opt.l = 2;
  const auto rep = verify_conjecture(y, 4, opt);
  for (const auto& r : rep.records) {
    const Json j = to_json(r, false);
    EXPECT_FALSE(j.contains("seconds"));
    const auto back = rank_record_from_json(j);
    EXPECT_EQ(to_json(back, false), j);
    ASSERT_TRUE(back.certificate);
    EXPECT_TRUE(verify_poly_snf(*back.certificate, x_plus_shift_matrix(-y.du_matrix(r.n), 0, 1)));
  }
  EXPECT_TRUE(to_json(rep.records[0], true).contains("seconds"));
  const Json report = to_json(rep, false);
  EXPECT_EQ(report["tool"], "dposet");
  EXPECT_EQ(report["version"], kVersion);
  EXPECT_EQ(report["convention"], "DU+xI");
  EXPECT_EQ(report["records"].size(), 5u);
}

TEST(Json, ObstructionCodes) {
  for (auto c : {ObstructionCode::GcdObstruction, ObstructionCode::RankEqualityObstruction,
                 ObstructionCode::BaseSearchFailure, ObstructionCode::NonSurjectiveDownMap,
                 ObstructionCode::Internal}) {
    Obstruction o{c, 3, "detail", true};
    const auto back = obstruction_from_json(to_json(o));
    EXPECT_EQ(back.code, c);
    EXPECT_EQ(back.n, 3);
    EXPECT_EQ(back.congruence_holds, true);
  }
  EXPECT_EQ(to_json(Obstruction{ObstructionCode::GcdObstruction, 1, "", std::nullopt})["code"],
            "GCD_OBSTRUCTION");
}

TEST(Hash, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cache, HitReplaysPayloadExactly) {
  Cache cache(fresh_dir("hit"));
  EXPECT_FALSE(cache.get("young", "matrix-DU", 2));
  Json payload{{"a", "1"}, {"b", Json::array({1, 2, 3})}};
  cache.put("young", "matrix-DU", 2, payload);
  const auto hit = cache.get("young", "matrix-DU", 2);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->dump(), payload.dump());
  EXPECT_FALSE(cache.get("young", "matrix-DU", 3));
  EXPECT_FALSE(cache.get("yf", "matrix-DU", 2));
  EXPECT_FALSE(cache.get("young", "matrix-UD", 2));
}

TEST(Cache, CorruptEntriesAreIgnored) {
  const auto dir = fresh_dir("corrupt");
  Cache cache(dir);
  cache.put("young", "k", 1, Json{{"v", "42"}});
  const auto path = cache.path_for("young", "k", 1);
  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto pos = text.find("42");
  ASSERT_NE(pos, std::string::npos);
  std::string tampered = text;
  tampered.replace(pos, 2, "43");
  std::ofstream(path, std::ios::trunc) << tampered;
  EXPECT_FALSE(cache.get("young", "k", 1));
  std::ofstream(path, std::ios::trunc) << "{not json";
  EXPECT_FALSE(cache.get("young", "k", 1));
  // rewriting restores it
  cache.put("young", "k", 1, Json{{"v", "42"}});
  EXPECT_TRUE(cache.get("young", "k", 1));
}

TEST(Cache, DistinctSpecsDoNotCollide) {
  Cache cache(fresh_dir("collide"));
  cache.put("young*yf", "k", 0, Json(1));
  cache.put("young_yf", "k", 0, Json(2));
  EXPECT_NE(cache.path_for("young*yf", "k", 0), cache.path_for("young_yf", "k", 0));
  EXPECT_EQ(*cache.get("young*yf", "k", 0), Json(1));
  EXPECT_EQ(*cache.get("young_yf", "k", 0), Json(2));
}
