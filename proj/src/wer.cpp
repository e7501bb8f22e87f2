#include "maskbench/wer.hpp"

#include <cctype>
#include <cstdint>

#include "maskbench/errors.hpp"

namespace maskbench {

WerBreakdown wer(const std::vector<std::string>& reference,
                 const std::vector<std::string>& hypothesis) {
  if (reference.empty()) throw InputError("WER needs a non-empty reference transcript");
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();

  // dist[i][j]: edit distance between ref[:i] and hyp[:j], row-major on a
  // flat buffer.
  std::vector<std::int32_t> dist((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::int32_t& { return dist[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::int32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::int32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int32_t sub = at(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      const std::int32_t del = at(i - 1, j) + 1;
      const std::int32_t ins = at(i, j - 1) + 1;
      at(i, j) = std::min(sub, std::min(del, ins));
    }
  }

  // Backtrace with a fixed preference (diagonal, then deletion, then
  // insertion) so equal-cost alignments always decompose the same way.
  WerBreakdown out;
  out.ref_len = static_cast<std::int64_t>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        at(i, j) == at(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1)) {
      if (reference[i - 1] != hypothesis[j - 1]) ++out.substitutions;
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++out.deletions;
      --i;
    } else {
      ++out.insertions;
      --j;
    }
  }
  out.rate = static_cast<double>(out.substitutions + out.deletions + out.insertions) /
             static_cast<double>(out.ref_len);
  return out;
}

WerBreakdown aggregate(const std::vector<WerBreakdown>& per_utterance) {
  WerBreakdown total;
  for (const auto& w : per_utterance) {
    total.substitutions += w.substitutions;
    total.deletions += w.deletions;
    total.insertions += w.insertions;
    total.ref_len += w.ref_len;
  }
  if (total.ref_len == 0) throw InputError("WER needs a non-empty reference transcript");
  total.rate = static_cast<double>(total.substitutions + total.deletions + total.insertions) /
               static_cast<double>(total.ref_len);
  return total;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

}  // namespace maskbench
