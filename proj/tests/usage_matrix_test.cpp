#include <random>
#include <sstream>

#include "doctest.h"
#include "knnsum/usage_matrix.hpp"
#include "oracles.hpp"

using namespace knnsum;

namespace {

RatingsFormat no_header() {
  RatingsFormat f;
  f.header = false;
  return f;
}

UsageMatrix from_log(const std::vector<oracle::Pair>& log) {
  return UsageMatrix::from_pairs(log);
}

}  // namespace

TEST_CASE("ingest collapses repeated pairs") {
  std::istringstream in("u1\ta\nu1\tb\nu2\ta\nu2\ta\n");
  const auto r = ingest_ratings(in, no_header());
  const auto& m = r.matrix;
  CHECK(r.rejected.empty());
  CHECK(m.users() == std::vector<std::string>{"u1", "u2"});
  CHECK(m.items() == std::vector<std::string>{"a", "b"});
  CHECK(m.raters(m.item_index("a")).size() == 2);
  CHECK(m.raters(m.item_index("b")).size() == 1);
  CHECK(m.event_count() == 3);
}

TEST_CASE("header-only stream gives an empty matrix") {
  std::istringstream in("userID\tmovieID\trating\n");
  const auto r = ingest_ratings(in, RatingsFormat{});
  CHECK(r.matrix.user_count() == 0);
  CHECK(r.matrix.item_count() == 0);
  CHECK(r.rejected.empty());
}

TEST_CASE("short lines are rejected without aborting") {
  std::istringstream in("u1\ta\nu3\nu2\ta\nu2\tb\n");
  const auto r = ingest_ratings(in, no_header());
  REQUIRE(r.rejected.size() == 1);
  CHECK(r.rejected[0].line == 2);
  CHECK(r.matrix.user_count() == 2);
  CHECK(r.matrix.item_count() == 2);
}

TEST_CASE("mapped rating column must be present but is discarded") {
  auto fmt = no_header();
  fmt.delimiter = ',';
  fmt.rating_column = 2;
  std::istringstream in("u1,a,5\nu1,b\nu2,a,1.5\n");
  const auto r = ingest_ratings(in, fmt);
  CHECK(r.rejected.size() == 1);
  CHECK(r.matrix.item_count() == 1);
  CHECK(r.matrix.raters(0).size() == 2);
}

TEST_CASE("crlf line endings and empty ids") {
  std::istringstream in("u1\ta\r\n\t b\r\n\r\nu2\ta\r\n");
  const auto r = ingest_ratings(in, no_header());
  CHECK(r.rejected.size() == 1);
  CHECK(r.matrix.items() == std::vector<std::string>{"a"});
}

TEST_CASE("unreadable stream is fatal") {
  std::istringstream in;
  in.setstate(std::ios::failbit);
  CHECK_THROWS_AS(ingest_ratings(in, no_header()), IoError);
  CHECK_THROWS_AS(ingest_ratings_file("/nonexistent/ratings.dat", no_header()),
                  IoError);
}

TEST_CASE("cooccurrence counts") {
  const auto m = from_log({{"u1", "a"}, {"u1", "b"}, {"u2", "a"}, {"u3", "b"},
                           {"u4", "c"}});
  CHECK(cooccurrence(m, "a", "b") == ContingencyTable{1, 1, 1, 1});

  SUBCASE("identical rater sets") {
    const auto m2 = from_log({{"u1", "x"}, {"u1", "y"}, {"u2", "x"}, {"u2", "y"},
                              {"u3", "z"}, {"u4", "z"}, {"u5", "z"}});
    CHECK(cooccurrence(m2, "x", "y") == ContingencyTable{2, 0, 0, 3});
  }
  SUBCASE("disjoint rater sets") {
    const auto m2 = from_log({{"u1", "x"}, {"u2", "x"}, {"u3", "y"}, {"u4", "z"},
                              {"u5", "z"}});
    CHECK(cooccurrence(m2, "x", "y") == ContingencyTable{0, 2, 1, 2});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(cooccurrence(m, "a", "nope"), LookupError);
    CHECK_THROWS_AS(cooccurrence(m, "a", "a"), InvalidArgument);
  }
}

TEST_CASE("duplicated log yields an identical matrix") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 19);
  std::vector<oracle::Pair> log;
  for (int i = 0; i < 120; ++i) {
    log.emplace_back("u" + std::to_string(pick(rng)), "i" + std::to_string(pick(rng)));
  }
  auto doubled = log;
  doubled.insert(doubled.end(), log.begin(), log.end());
  const auto a = from_log(log);
  const auto b = from_log(doubled);
  CHECK(a == b);
  CHECK(a.digest() == b.digest());
}

TEST_CASE("contingency tables match a raw-log rescan on random logs") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 30; ++round) {
    std::uniform_int_distribution<int> n_users(1, 50);
    std::uniform_int_distribution<int> n_items(2, 50);
    const int nu = n_users(rng);
    const int ni = n_items(rng);
    std::uniform_int_distribution<int> pu(0, nu - 1);
    std::uniform_int_distribution<int> pi(0, ni - 1);
    std::uniform_int_distribution<int> n_events(1, 400);
    std::vector<oracle::Pair> log;
    const int events = n_events(rng);
    for (int e = 0; e < events; ++e) {
      log.emplace_back("u" + std::to_string(pu(rng)), "i" + std::to_string(pi(rng)));
    }
    const auto m = from_log(log);
    for (std::size_t a = 0; a < m.item_count(); ++a) {
      for (std::size_t b = 0; b < m.item_count(); ++b) {
        if (a == b) continue;
        const auto t = cooccurrence(m, m.item_id(a), m.item_id(b));
        const auto o = oracle::contingency(log, m.item_id(a), m.item_id(b));
        REQUIRE(t == ContingencyTable{o[0], o[1], o[2], o[3]});
        CHECK(t.total() == m.total_users());
        const auto swapped = cooccurrence(m, m.item_id(b), m.item_id(a));
        CHECK(swapped == ContingencyTable{t.k11, t.k21, t.k12, t.k22});
      }
    }
  }
}
