#include "streamlat/metrics.hpp"

#include <random>

#include "doctest.h"

using namespace streamlat;

namespace {

constexpr double kTol = 1e-9;

SentenceView view(int src_len, std::vector<int> g) { return make_view(src_len, std::move(g)); }

// Random non-decreasing read sequence within [1, src_len].
SentenceView random_view(std::mt19937_64& rng) {
  int src_len = 1 + static_cast<int>(rng() % 20);
  int tgt_len = 1 + static_cast<int>(rng() % 25);
  std::vector<int> g;
  int cur = 1 + static_cast<int>(rng() % src_len);
  for (int i = 0; i < tgt_len; ++i) {
    g.push_back(cur);
    cur = std::min(src_len, cur + static_cast<int>(rng() % 3));
  }
  return make_view(src_len, std::move(g));
}

}  // namespace

TEST_CASE("gamma is the target-to-source ratio") {
  CHECK(gamma_ratio(2, 2) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(gamma_ratio(2, 4) == doctest::Approx(2.0).epsilon(kTol));
  CHECK(gamma_ratio(4, 6) == doctest::Approx(1.5).epsilon(kTol));
  CHECK_THROWS_AS(gamma_ratio(0, 3), ValidationError);
  CHECK_THROWS_AS(gamma_ratio(3, 0), ValidationError);
}

TEST_CASE("tau is the first position reading the whole source") {
  CHECK(tau_position(std::vector<int>{1, 2}, 2).tau == 2);
  CHECK(tau_position(std::vector<int>{1, 1, 2, 2}, 2).tau == 3);
  auto fb = tau_position(std::vector<int>{1, 1}, 3);
  CHECK(fb.tau == 2);
  CHECK(fb.fallback);
  CHECK_FALSE(tau_position(std::vector<int>{1, 2}, 2).fallback);
}

TEST_CASE("ap_sentence") {
  CHECK(ap_sentence(view(4, {1, 2, 3, 3, 4, 4})).value ==
        doctest::Approx(17.0 / 24.0).epsilon(kTol));
  CHECK(ap_sentence(view(2, {1, 2})).value == doctest::Approx(0.75).epsilon(kTol));
  CHECK(ap_sentence(view(7, {7})).value == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("al_sentence") {
  CHECK(al_sentence(view(4, {1, 2, 3, 3, 4, 4})).score.value ==
        doctest::Approx(19.0 / 15.0).epsilon(kTol));
  CHECK(al_sentence(view(2, {1, 1, 2, 2})).score.value ==
        doctest::Approx(5.0 / 6.0).epsilon(kTol));
  // wait-1 ideal: constant lag of one token
  std::vector<int> ideal;
  for (int i = 1; i <= 9; ++i) ideal.push_back(i);
  CHECK(al_sentence(view(9, ideal)).score.value == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("al tau fallback normalizes by |y|") {
  auto al = al_sentence(view(3, {1, 1}));
  CHECK(al.tau_fallback);
  CHECK(al.score.normalizer == doctest::Approx(2.0));
  CHECK(al.score.value == doctest::Approx((1.0 + (1.0 - 1.0 / (2.0 / 3.0))) / 2.0).epsilon(kTol));
}

TEST_CASE("dal_sentence") {
  CHECK(dal_sentence(view(4, {1, 2, 3, 3, 4, 4}), 1.0).score.value ==
        doctest::Approx(1.5).epsilon(kTol));
  CHECK(dal_sentence(view(2, {1, 1, 2, 2}), 1.0).score.value ==
        doctest::Approx(1.0).epsilon(kTol));
  // s=0 removes the ratchet for monotone g: costs equal AL's
  auto dal = dal_sentence(view(2, {1, 2}), 0.0);
  auto al = al_sentence(view(2, {1, 2}));
  REQUIRE(dal.score.costs.size() == al.score.costs.size());
  for (std::size_t i = 0; i < dal.score.costs.size(); ++i)
    CHECK(dal.score.costs[i] == doctest::Approx(al.score.costs[i]).epsilon(kTol));
  CHECK(dal.score.value == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("dal carry_in participates only through the max at position 1") {
  SentenceView v = view(2, {1, 2});
  auto no_carry = dal_sentence(v, 1.0);
  auto low_carry = dal_sentence(v, 1.0, 0.5);  // below g(1), no effect
  CHECK(low_carry.score.value == doctest::Approx(no_carry.score.value).epsilon(kTol));
  auto high_carry = dal_sentence(v, 1.0, 3.0);
  CHECK(high_carry.score.value > no_carry.score.value);
  CHECK(high_carry.score.costs[0] == doctest::Approx(3.0).epsilon(kTol));
}

TEST_CASE("per-position dominance: g' >= g for any s") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    SentenceView v = random_view(rng);
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
      auto dal = dal_sentence(v, s);
      auto al = al_sentence(v);
      double dal_cost_sum = 0, al_cost_sum = 0;
      for (std::size_t i = 0; i < dal.score.costs.size(); ++i) {
        // g'(i) - (i-1)/gamma >= g(i) - (i-1)/gamma
        CHECK(dal.score.costs[i] >= al.score.costs[i] - 1e-12);
        dal_cost_sum += dal.score.costs[i];
        al_cost_sum += al.score.costs[i];
      }
      CHECK(dal_cost_sum >= al_cost_sum - 1e-12);
    }
  }
}

TEST_CASE("dal value is non-decreasing in s") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    SentenceView v = random_view(rng);
    double prev = -1e300;
    for (double s : {0.0, 0.25, 0.5, 0.75, 0.95, 1.0}) {
      double value = dal_sentence(v, s).score.value;
      CHECK(value >= prev - 1e-12);
      prev = value;
    }
  }
}

TEST_CASE("ap of the wait-0 oracle approaches 1/2") {
  for (int n : {1, 2, 5, 50, 500}) {
    std::vector<int> g;
    for (int i = 1; i <= n; ++i) g.push_back(i);  // gamma = 1 oracle
    double expected = (n + 1.0) / (2.0 * n);
    CHECK(ap_sentence(view(n, g)).value == doctest::Approx(expected).epsilon(kTol));
  }
}

TEST_CASE("scores are reproducible from their own fields") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    SentenceView v = random_view(rng);
    auto check = [](const SentenceScore& s, std::size_t counted) {
      double sum = 0;
      for (std::size_t i = 0; i < counted; ++i) sum += s.costs[i];
      CHECK(s.value == doctest::Approx(sum / s.normalizer).epsilon(1e-9));
    };
    auto ap = ap_sentence(v);
    check(ap, ap.costs.size());
    auto al = al_sentence(v);
    check(al.score, static_cast<std::size_t>(al.score.normalizer));
    auto dal = dal_sentence(v, 0.95);
    check(dal.score, dal.score.costs.size());
  }
}

TEST_CASE("local delays beyond the sentence are consumed unclipped") {
  // after localization g may exceed |x| (over-read) or drop to <= 0
  SentenceView over = view(2, {3});
  CHECK(ap_sentence(over).value == doctest::Approx(1.5).epsilon(kTol));  // may exceed 1
  CHECK(al_sentence(over).score.value == doctest::Approx(3.0).epsilon(kTol));
  SentenceView under = view(2, {0, 2});
  CHECK(al_sentence(under).score.costs[0] == doctest::Approx(0.0).epsilon(kTol));
}
