#include "maskbench/asv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "maskbench/errors.hpp"
#include "maskbench/wer.hpp"

namespace maskbench {

namespace {

void require_trials(const TrialScores& scores) {
  if (scores.target.empty() || scores.nontarget.empty()) {
    throw InputError("need at least one target and one nontarget trial");
  }
  for (double s : scores.target) {
    if (!std::isfinite(s)) throw InputError("non-finite target score");
  }
  for (double s : scores.nontarget) {
    if (!std::isfinite(s)) throw InputError("non-finite nontarget score");
  }
}

}  // namespace

std::vector<DetPoint> det_points(const TrialScores& scores) {
  require_trials(scores);
  std::vector<double> tgt = scores.target;
  std::vector<double> non = scores.nontarget;
  std::sort(tgt.begin(), tgt.end());
  std::sort(non.begin(), non.end());

  std::vector<double> thresholds;
  thresholds.reserve(tgt.size() + non.size() + 2);
  thresholds.push_back(-std::numeric_limits<double>::infinity());
  std::merge(tgt.begin(), tgt.end(), non.begin(), non.end(), std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  std::vector<DetPoint> points;
  points.reserve(thresholds.size());
  for (double th : thresholds) {
    // FAR: nontargets accepted (score >= th). FRR: targets rejected (< th).
    const auto non_below = std::lower_bound(non.begin(), non.end(), th) - non.begin();
    const auto tgt_below = std::lower_bound(tgt.begin(), tgt.end(), th) - tgt.begin();
    DetPoint p;
    p.threshold = th;
    p.far = static_cast<double>(static_cast<std::int64_t>(non.size()) - non_below) /
            static_cast<double>(non.size());
    p.frr = static_cast<double>(tgt_below) / static_cast<double>(tgt.size());
    points.push_back(p);
  }
  return points;
}

double eer(const TrialScores& scores) {
  const auto points = det_points(scores);
  // far - frr starts at +1 (accept everything) and descends to -1; the equal
  // error rate sits where it crosses zero.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = points[i].far - points[i].frr;
    if (d > 0.0) continue;
    if (d == 0.0 || i == 0) return points[i].far;
    const double d0 = points[i - 1].far - points[i - 1].frr;  // > 0
    const double t = d0 / (d0 - d);
    return points[i - 1].far + t * (points[i].far - points[i - 1].far);
  }
  return points.back().far;  // unreachable: the final point has far == 0, frr == 1
}

double cllr(const TrialScores& scores) {
  require_trials(scores);
  // log(1 + e^u) evaluated without overflow.
  auto softplus = [](double u) { return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u))); };
  double tgt_cost = 0.0;
  for (double s : scores.target) tgt_cost += softplus(-s);
  tgt_cost /= static_cast<double>(scores.target.size());
  double non_cost = 0.0;
  for (double s : scores.nontarget) non_cost += softplus(s);
  non_cost /= static_cast<double>(scores.nontarget.size());
  return 0.5 * (tgt_cost + non_cost) / std::log(2.0);
}

TrialScores parse_trial_scores_text(const std::string& text, const std::string& origin) {
  TrialScores scores;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto tokens = tokenize(line);
    if (tokens.size() != 2) {
      throw InputError(origin + ":" + std::to_string(line_no) +
                       ": expected 'label score', got " + std::to_string(tokens.size()) +
                       " fields");
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(tokens[1], &used);
      if (used != tokens[1].size()) throw std::invalid_argument(tokens[1]);
    } catch (const std::exception&) {
      throw InputError(origin + ":" + std::to_string(line_no) + ": bad score '" + tokens[1] +
                       "'");
    }
    if (!std::isfinite(value)) {
      throw InputError(origin + ":" + std::to_string(line_no) + ": non-finite score '" +
                       tokens[1] + "'");
    }
    if (tokens[0] == "target") {
      scores.target.push_back(value);
    } else if (tokens[0] == "nontarget") {
      scores.nontarget.push_back(value);
    } else {
      throw InputError(origin + ":" + std::to_string(line_no) + ": label must be target or " +
                       "nontarget, got '" + tokens[0] + "'");
    }
  }
  return scores;
}

TrialScores read_trial_scores(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open score file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trial_scores_text(buffer.str(), path);
}

}  // namespace maskbench
