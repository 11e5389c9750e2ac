#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>

#include "ncfold/reproduce.hpp"

using namespace ncfold;

TEST_CASE("group filter") {
  ReproduceOptions options;
  options.only = {"bounds", "census"};
  const auto results = reproduce_paper(options);
  REQUIRE(results.size() == 2);
  // Run order, not request order.
  CHECK(results[0].group == "census");
  CHECK(results[1].group == "bounds");
  CHECK(results[0].id == 1);
  CHECK(results[1].id == 9);
  for (const auto& r : results) CHECK(r.passed);

  options.only = {"nonsense"};
  CHECK_THROWS_AS(reproduce_paper(options), std::invalid_argument);
  CHECK(check_groups().size() == 12);
}

TEST_CASE("tampered tau_2 fails the balance check") {
  ReproduceOptions options;
  options.only = {"balance"};
  const auto clean = reproduce_paper(options);
  REQUIRE(clean.size() == 1);
  CHECK(clean[0].passed);

  options.tau2_override = Rational(34, 100);
  const auto tampered = reproduce_paper(options);
  REQUIRE(tampered.size() == 1);
  CHECK(tampered[0].group == "balance");
  CHECK_FALSE(tampered[0].passed);
  CHECK(tampered[0].detail.find("tau_2 overridden to 17/50") != std::string::npos);
  CHECK(tampered[0].data["k2"]["violations"].size() > 0);
}

TEST_CASE("lambda-tilde table check reports the k=4 entry") {
  ReproduceOptions options;
  options.only = {"constants"};
  const auto results = reproduce_paper(options);
  REQUIRE(results.size() == 1);
  // The closed form gives 297/755 where the table prints 297/455.
  CHECK_FALSE(results[0].passed);
  CHECK(results[0].detail.find("k=4: computed 297/755") != std::string::npos);
  const auto& rows = results[0].data["lambda_tilde"];
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["match"].get<bool>());
  CHECK(rows[1]["match"].get<bool>());
  CHECK_FALSE(rows[2]["match"].get<bool>());
  CHECK(rows[3]["match"].get<bool>());
}

TEST_CASE("quick checks pass") {
  ReproduceOptions options;
  options.only = {"greedy", "truncated", "trivial", "invariance"};
  for (const auto& r : reproduce_paper(options)) {
    INFO(r.group << ": " << r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("report files") {
  const auto dir = std::filesystem::temp_directory_path() / "ncfold_reproduce_test";
  std::filesystem::remove_all(dir);
  ReproduceOptions options;
  options.only = {"census", "greedy"};
  const auto results = reproduce_paper(options);
  write_reports(dir, options, results);
  CHECK(std::filesystem::exists(dir / "summary.json"));
  CHECK(std::filesystem::exists(dir / "census.json"));
  CHECK(std::filesystem::exists(dir / "greedy.json"));
  std::ifstream csv(dir / "census.csv");
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(header == "ell_value,count");
  CHECK(first == "0,28");
  const Json summary = Json::parse(std::ifstream(dir / "summary.json"));
  CHECK(summary["all_passed"].get<bool>());
  CHECK(summary["checks"].size() == 2);
  std::filesystem::remove_all(dir);
}
