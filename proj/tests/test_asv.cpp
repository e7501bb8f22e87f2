#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "maskbench/asv.hpp"
#include "maskbench/errors.hpp"
#include "support/test_util.hpp"

using namespace maskbench;

namespace {

// Brute-force FAR/FRR at one threshold, counted directly from definitions.
std::pair<double, double> rates_at(const TrialScores& s, double threshold) {
  std::size_t fa = 0, fr = 0;
  for (double v : s.nontarget) {
    if (v >= threshold) ++fa;
  }
  for (double v : s.target) {
    if (v < threshold) ++fr;
  }
  return {static_cast<double>(fa) / static_cast<double>(s.nontarget.size()),
          static_cast<double>(fr) / static_cast<double>(s.target.size())};
}

TrialScores random_scores(std::mt19937& gen, int n_target, int n_nontarget, double sep) {
  std::normal_distribution<double> tgt(sep / 2.0, 1.0), non(-sep / 2.0, 1.0);
  TrialScores s;
  for (int i = 0; i < n_target; ++i) s.target.push_back(tgt(gen));
  for (int i = 0; i < n_nontarget; ++i) s.nontarget.push_back(non(gen));
  return s;
}

}  // namespace

TEST_CASE("det staircase on separable scores") {
  const TrialScores s{{2.0, 3.0}, {-2.0, -3.0}};
  const auto points = det_points(s);
  REQUIRE(points.size() >= 4);

  // Threshold below everything: accept all.
  CHECK(points.front().far == 1.0);
  CHECK(points.front().frr == 0.0);
  // Threshold above everything: reject all.
  CHECK(points.back().far == 0.0);
  CHECK(points.back().frr == 1.0);

  // Any threshold between the classes is error-free; find one.
  bool has_perfect = false;
  for (const auto& p : points) {
    if (p.far == 0.0 && p.frr == 0.0) has_perfect = true;
  }
  CHECK(has_perfect);
  CHECK(eer(s) == 0.0);
}

TEST_CASE("det staircase matches per-threshold counting on random scores") {
  std::mt19937 gen(555);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> n_dist(1, 40);
    const TrialScores s = random_scores(gen, n_dist(gen), n_dist(gen), 1.0);
    const auto points = det_points(s);

    double prev_far = 1.1, prev_frr = -0.1;
    for (const auto& p : points) {
      if (std::isfinite(p.threshold)) {
        const auto [far, frr] = rates_at(s, p.threshold);
        REQUIRE(p.far == far);
        REQUIRE(p.frr == frr);
      }
      // Monotone staircase in threshold order.
      REQUIRE(p.far <= prev_far);
      REQUIRE(p.frr >= prev_frr);
      prev_far = p.far;
      prev_frr = p.frr;
    }
    CHECK(points.front().far == 1.0);
    CHECK(points.front().frr == 0.0);
    CHECK(points.back().far == 0.0);
    CHECK(points.back().frr == 1.0);
  }
}

TEST_CASE("eer of identical score multisets is one half") {
  const TrialScores s{{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
  CHECK(eer(s) == doctest::Approx(0.5).epsilon(1e-12));

  std::mt19937 gen(77);
  std::normal_distribution<double> d(0.0, 1.0);
  TrialScores same;
  for (int i = 0; i < 500; ++i) {
    const double v = d(gen);
    same.target.push_back(v);
    same.nontarget.push_back(v);
  }
  CHECK(eer(same) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("eer approaches the analytic value for unit-variance gaussians") {
  // Means +/-1: crossing sits at 0 with error rate Phi(-1) ~ 0.15866.
  std::mt19937 gen(12345);
  const TrialScores s = random_scores(gen, 100000, 100000, 2.0);
  CHECK(std::abs(eer(s) - 0.15866) < 0.01);
}

TEST_CASE("eer is invariant under strictly increasing transforms") {
  std::mt19937 gen(8);
  const TrialScores s = random_scores(gen, 200, 300, 1.5);
  const double base = eer(s);

  auto mapped = [&](auto f) {
    TrialScores t;
    for (double v : s.target) t.target.push_back(f(v));
    for (double v : s.nontarget) t.nontarget.push_back(f(v));
    return t;
  };
  CHECK(eer(mapped([](double v) { return 3.0 * v + 10.0; })) == doctest::Approx(base).epsilon(1e-12));
  CHECK(eer(mapped([](double v) { return std::tanh(v); })) == doctest::Approx(base).epsilon(1e-9));
  CHECK(eer(mapped([](double v) { return std::exp(v); })) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("cllr hand values") {
  // Zero scores carry no information: exactly one bit.
  const TrialScores zeros{{0.0, 0.0, 0.0}, {0.0}};
  CHECK(cllr(zeros) == doctest::Approx(1.0).epsilon(1e-15));

  // Confident and correct: essentially free.
  const TrialScores confident{{20.0, 20.0}, {-20.0, -20.0}};
  CHECK(cllr(confident) < 1e-5);
  CHECK(cllr(confident) > 0.0);

  // Single +/-1 pair, by direct evaluation of the formula.
  const TrialScores pair{{1.0}, {-1.0}};
  const double expected = std::log2(1.0 + std::exp(-1.0));
  CHECK(cllr(pair) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.4519).epsilon(1e-3));

  // Confident and wrong is heavily punished.
  const TrialScores wrong{{-30.0}, {30.0}};
  CHECK(cllr(wrong) > 40.0);
}

TEST_CASE("cllr is calibration-sensitive, not scale-invariant") {
  std::mt19937 gen(21);
  const TrialScores s = random_scores(gen, 300, 300, 2.0);
  const double base = cllr(s);
  TrialScores scaled;
  for (double v : s.target) scaled.target.push_back(10.0 * v);
  for (double v : s.nontarget) scaled.nontarget.push_back(10.0 * v);
  CHECK(std::abs(cllr(scaled) - base) > 0.01);
  CHECK(base >= 0.0);
}

TEST_CASE("cllr survives extreme scores without overflow") {
  const TrialScores s{{1e4, -1e4}, {-1e4, 1e4}};
  const double v = cllr(s);
  CHECK(std::isfinite(v));
  // One catastrophically wrong trial on each side: mean softplus ~ |s|/ln 2 / 2.
  CHECK(v == doctest::Approx(1e4 / std::log(2.0) / 2.0).epsilon(1e-6));
}

TEST_CASE("empty score lists are input errors") {
  CHECK_THROWS_AS(det_points({{}, {1.0}}), InputError);
  CHECK_THROWS_AS(det_points({{1.0}, {}}), InputError);
  CHECK_THROWS_AS(eer({{}, {}}), InputError);
  CHECK_THROWS_AS(cllr({{1.0}, {}}), InputError);
}

TEST_CASE("trial score parsing") {
  const std::string text =
      "# comment line\n"
      "target\t1.25\n"
      "nontarget\t-0.5\n"
      "\n"
      "target\t-3e-2\n"
      "nontarget\t4\n";
  const TrialScores s = parse_trial_scores_text(text, "scores.txt");
  REQUIRE(s.target.size() == 2);
  REQUIRE(s.nontarget.size() == 2);
  CHECK(s.target[0] == 1.25);
  CHECK(s.target[1] == -0.03);
  CHECK(s.nontarget[0] == -0.5);
  CHECK(s.nontarget[1] == 4.0);
}

TEST_CASE("trial score parsing names the offending line") {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    try {
      parse_trial_scores_text(text, "scores.txt");
      return false;
    } catch (const InputError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
  };
  CHECK(fails_with("target\t1.0\nimpostor\t0.5\n", "scores.txt:2"));
  CHECK(fails_with("target\tnotanumber\n", "scores.txt:1"));
  CHECK(fails_with("target\t1.0trailing\n", "scores.txt:1"));
  CHECK(fails_with("target\n", "scores.txt:1"));
  CHECK(fails_with("target\tinf\n", "scores.txt:1"));

  CHECK_THROWS_AS(read_trial_scores("/nonexistent/trial.scores"), InputError);

  testutil::TempDir tmp;
  testutil::write_text(tmp.file("ok.scores"), "target\t0.5\nnontarget\t-0.5\n");
  const TrialScores s = read_trial_scores(tmp.file("ok.scores"));
  CHECK(s.target.size() == 1);
  CHECK(s.nontarget.size() == 1);
}
