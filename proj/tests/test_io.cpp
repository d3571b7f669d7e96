#include <doctest.h>

#include "rsched/io.hpp"
#include "rsched/solve.hpp"
#include "testutil.hpp"

using namespace rsched;
using nlohmann::json;

TEST_CASE("instance json round trip") {
  const Instance inst = testutil::instance_i1();
  const Instance back = instance_from_json(instance_to_json(inst));
  CHECK(back.gamma == inst.gamma);
  REQUIRE(back.n() == inst.n());
  for (int id = 1; id <= inst.n(); ++id) {
    CHECK(back.job(id).p_bar == inst.job(id).p_bar);
    CHECK(back.job(id).p_hat == inst.job(id).p_hat);
    CHECK(back.job(id).d == inst.job(id).d);
  }
}

TEST_CASE("field order does not matter, unknown fields do") {
  const auto j = json::parse(R"({
    "jobs": [{"d": 5, "id": 1, "p_hat": 3, "p_bar": 2}],
    "gamma": 1
  })");
  CHECK(instance_from_json(j).n() == 1);

  auto extra_top = j;
  extra_top["comment"] = "nope";
  CHECK_THROWS_WITH_AS(instance_from_json(extra_top), doctest::Contains("unknown field"),
                       std::invalid_argument);

  auto extra_job = j;
  extra_job["jobs"][0]["weight"] = 1;
  CHECK_THROWS_WITH_AS(instance_from_json(extra_job), doctest::Contains("unknown field"),
                       std::invalid_argument);
}

TEST_CASE("instance json type and range errors") {
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"gamma": 1})")), std::invalid_argument);
  CHECK_THROWS_AS(
      instance_from_json(json::parse(R"({"gamma": 0.5, "jobs": []})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      instance_from_json(json::parse(
          R"({"gamma": 0, "jobs": [{"id": 1, "p_bar": -2, "p_hat": 0, "d": 0}]})")),
      std::invalid_argument);
  // 2^63 parses as unsigned and must be refused.
  CHECK_THROWS_WITH_AS(
      instance_from_json(json::parse(
          R"({"gamma": 0, "jobs": [{"id": 1, "p_bar": 9223372036854775808, "p_hat": 0, "d": 0}]})")),
      doctest::Contains("overflow risk"), std::invalid_argument);
}

TEST_CASE("metadata block survives the round trip") {
  GeneratorMeta meta;
  meta.source = "random";
  meta.seed = 77;
  const json j = instance_to_json(testutil::instance_i1(), &meta);
  const GeneratedInstance back = instance_with_meta_from_json(j);
  CHECK(back.meta.source == "random");
  CHECK(back.meta.seed == 77);
  CHECK_FALSE(back.meta.m.has_value());
}

TEST_CASE("instance digest ignores textual field order") {
  const std::string a = R"({"gamma": 1, "jobs": [{"id":1,"p_bar":2,"p_hat":3,"d":5}]})";
  const std::string b = R"({"jobs": [{"d":5,"p_hat":3,"p_bar":2,"id":1}], "gamma": 1})";
  CHECK(instance_digest(instance_from_json(json::parse(a))) ==
        instance_digest(instance_from_json(json::parse(b))));
  CHECK(instance_digest(testutil::instance_i1()).size() == 16);
}

TEST_CASE("solution records round trip and verify") {
  const Instance inst = testutil::instance_i1();
  const SolveOutcome outcome = solve_instance(inst, SolveConfig{});
  const SolutionRecord rec = make_record(inst, outcome, false);

  const SolutionRecord back = record_from_json(record_to_json(rec));
  CHECK(back.objective == rec.objective);
  CHECK(back.early == rec.early);
  CHECK(back.sigma == rec.sigma);
  CHECK(back.certificate == rec.certificate);

  CHECK(verify_record(inst, back).pass);
}

TEST_CASE("verify rejects a doctored objective") {
  const Instance inst = testutil::instance_i1();
  SolutionRecord rec = make_record(inst, solve_instance(inst, SolveConfig{}), false);
  rec.objective -= 1;
  const VerifyResult result = verify_record(inst, rec);
  CHECK_FALSE(result.pass);
}

TEST_CASE("verify accepts reordered tardy jobs") {
  // Two early, two tardy; swapping the tardy tail keeps the record valid.
  const Instance inst = testutil::make_instance(
      {{{1, 0, 4}}, {{1, 0, 4}}, {{9, 0, 9}}, {{9, 0, 9}}}, 0);
  SolutionRecord rec = make_record(inst, solve_instance(inst, SolveConfig{}), false);
  REQUIRE(rec.early == std::vector<int>{1, 2});
  REQUIRE(rec.sigma == std::vector<int>{1, 2, 3, 4});
  rec.sigma = {1, 2, 4, 3};
  rec.certificate.clear();  // certificates are positional; drop them after reordering
  CHECK(verify_record(inst, rec).pass);

  rec.sigma = {2, 1, 4, 3};  // early jobs swapped: both still fit their shared due date
  CHECK(verify_record(inst, rec).pass);

  rec.sigma = {3, 2, 1, 4};  // tardy job ahead of the early ones: job 2 now misses
  CHECK_FALSE(verify_record(inst, rec).pass);
}

TEST_CASE("verify flags certificate mismatches") {
  const Instance inst = testutil::instance_i1();
  SolutionRecord rec = make_record(inst, solve_instance(inst, SolveConfig{}), false);
  REQUIRE_FALSE(rec.certificate.empty());
  rec.certificate[0] += 1;
  const VerifyResult result = verify_record(inst, rec);
  CHECK_FALSE(result.pass);
  CHECK(result.first_differing_job == rec.sigma[0]);
}
