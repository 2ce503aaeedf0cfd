#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "teamsel/profile_io.hpp"
#include "teamsel/rng.hpp"

using namespace teamsel;

namespace {

PredictionProfile random_profile(std::uint64_t seed, std::size_t n,
                                 std::size_t k) {
  auto rng = rng::derive(seed, "io-random");
  Matrix fc(n, k);
  std::vector<double> out(k);
  for (auto& x : out) x = rng.next_uniform(-1e6, 1e6) * 1e-7;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      fc(i, t) = rng.next_normal(0.0, 1.0) * 1e3;
  return PredictionProfile(std::move(fc), std::move(out));
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("csv format definition") {
  const auto p = parse_profile_csv("round,outcome,e1,e2\n1,2,1,3\n");
  CHECK(p.n_experts() == 2);
  CHECK(p.n_rounds() == 1);
  CHECK(p.forecasts()(0, 0) == 1.0);
  CHECK(p.forecasts()(1, 0) == 3.0);
  CHECK(p.outcomes() == std::vector<double>{2.0});
  CHECK(p.labels() == std::vector<std::string>{"e1", "e2"});
}

TEST_CASE("csv round trip is bit exact") {
  const auto p = random_profile(5, 5, 7);
  const std::string text = profile_to_csv(p);
  const auto q = parse_profile_csv(text);
  CHECK(p == q);
  CHECK(profile_to_csv(q) == text);
}

TEST_CASE("json round trip is bit exact") {
  const auto p = random_profile(6, 4, 3);
  const auto q = parse_profile_json(profile_to_json(p));
  CHECK(p == q);
}

TEST_CASE("csv and json agree through files") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "teamsel_io_test";
  fs::create_directories(dir);
  const auto p = random_profile(7, 3, 4);
  save_profile(p, dir / "p.csv");
  save_profile(p, dir / "p.json");
  CHECK(load_profile(dir / "p.csv") == p);
  CHECK(load_profile(dir / "p.json") == p);
  fs::remove_all(dir);
}

TEST_CASE("header only file reports no rounds") {
  CHECK_THROWS_WITH_AS(parse_profile_csv("round,outcome,e1\n"),
                       doctest::Contains("no rounds"), ParseError);
}

TEST_CASE("malformed header") {
  CHECK_THROWS_WITH_AS(parse_profile_csv("time,outcome,e1\n1,2,3\n"),
                       doctest::Contains("header"), ParseError);
  CHECK_THROWS_AS(parse_profile_csv("round,outcome\n"), ParseError);
}

TEST_CASE("ragged row names the line") {
  CHECK_THROWS_WITH_AS(
      parse_profile_csv("round,outcome,e1,e2\n1,2,1,3\n2,2,1\n", "f.csv"),
      doctest::Contains("f.csv:3"), ParseError);
}

TEST_CASE("non numeric cell names row and column") {
  CHECK_THROWS_WITH_AS(
      parse_profile_csv("round,outcome,e1\n1,2,abc\n", "f.csv"),
      doctest::Contains("column 3"), ParseError);
}

TEST_CASE("nan cell rejected") {
  CHECK_THROWS_WITH_AS(parse_profile_csv("round,outcome,e1\n1,2,nan\n"),
                       doctest::Contains("non-finite"), ParseError);
}

TEST_CASE("rounds must be sequential from one") {
  CHECK_THROWS_AS(parse_profile_csv("round,outcome,e1\n2,2,1\n"), ParseError);
  CHECK_THROWS_AS(parse_profile_csv("round,outcome,e1\n1,2,1\n3,2,1\n"),
                  ParseError);
}

TEST_CASE("json validation") {
  CHECK_THROWS_AS(parse_profile_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_profile_json("{\"outcomes\":[1]}"), ParseError);
  CHECK_THROWS_AS(
      parse_profile_json("{\"outcomes\":[1],\"forecasts\":[[1,2]]}"),
      ParseError);
  CHECK_THROWS_AS(parse_profile_json("{\"outcomes\":[],\"forecasts\":[]}"),
                  ParseError);
}

}  // TEST_SUITE
