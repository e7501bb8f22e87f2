// maskbench: mask spoken content in audio and score the result.
//
// Subcommands: mask, unmask, score {mer,stoi,wer,asv}, recover-exp, demo.
// Every command emits a JSON run report (stdout or --out) and a short human
// summary on stderr. Exit codes: 0 success, 2 input error, 3 integrity
// error. All randomness flows from --seed / MASKBENCH_SEED; the default is a
// fixed constant, never the clock, so runs are reproducible by default.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "maskbench/alignment.hpp"
#include "maskbench/asv.hpp"
#include "maskbench/audio_buffer.hpp"
#include "maskbench/demo_signal.hpp"
#include "maskbench/digest.hpp"
#include "maskbench/errors.hpp"
#include "maskbench/ibm.hpp"
#include "maskbench/masking.hpp"
#include "maskbench/mer.hpp"
#include "maskbench/noise.hpp"
#include "maskbench/report.hpp"
#include "maskbench/stoi.hpp"
#include "maskbench/version.hpp"
#include "maskbench/wav_io.hpp"
#include "maskbench/wer.hpp"

namespace {

using namespace maskbench;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Shared option plumbing

struct GlobalOpts {
  std::uint64_t seed = kDefaultSeed;
  std::string out;  // report destination; empty/- = stdout
  int jobs = 1;
};

struct SpanSource {
  std::string spans_path;
  std::string align_path;
  std::string align_format = "auto";  // auto | tsv | ctm
  std::string targets_path;
  double pad_s = 0.0;
};

void add_span_flags(CLI::App* cmd, SpanSource* src) {
  auto* spans = cmd->add_option("--spans", src->spans_path,
                                "spans file: lines 'start_sec<TAB>end_sec'");
  auto* align = cmd->add_option("--align", src->align_path,
                                "word alignment file (tsv or ctm)");
  auto* targets = cmd->add_option("--targets", src->targets_path,
                                  "target phrases, one per line (needs --align)");
  cmd->add_option("--align-format", src->align_format, "alignment format")
      ->check(CLI::IsMember({"auto", "tsv", "ctm"}))
      ->capture_default_str();
  cmd->add_option("--pad", src->pad_s, "widen every span by this many seconds per side")
      ->capture_default_str();
  spans->excludes(targets);
  targets->needs(align);
}

AlignmentFormat resolve_format(const SpanSource& src) {
  if (src.align_format == "tsv") return AlignmentFormat::tsv;
  if (src.align_format == "ctm") return AlignmentFormat::ctm;
  const auto dot = src.align_path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : src.align_path.substr(dot);
  return ext == ".ctm" ? AlignmentFormat::ctm : AlignmentFormat::tsv;
}

// Resolve the masked-span set from either a spans file or alignment+targets.
// Unmatched target phrases come back via *unmatched (warned by callers).
SpanSet resolve_spans(const SpanSource& src, std::vector<std::string>* unmatched,
                      RunReport* report) {
  SpanSet spans;
  if (!src.spans_path.empty()) {
    spans = parse_spans(src.spans_path);
    if (report) report->add_input(src.spans_path);
  } else if (!src.targets_path.empty()) {
    const Transcript transcript = parse_alignment(src.align_path, resolve_format(src));
    const auto phrases = parse_targets(src.targets_path);
    auto match = spans_for_targets(transcript, phrases);
    spans = std::move(match.spans);
    if (unmatched) *unmatched = std::move(match.unmatched);
    if (report) {
      report->add_input(src.align_path);
      report->add_input(src.targets_path);
    }
  } else {
    throw InputError("no spans given: use --spans, or --align with --targets");
  }
  if (src.pad_s != 0.0) spans = spans.padded(src.pad_s);
  return spans;
}

json spans_json(const SpanSet& spans) {
  auto arr = json::array();
  for (const auto& s : spans.spans()) arr.push_back({{"start", s.start}, {"end", s.end}});
  return arr;
}

NoiseKind parse_strategy(const std::string& name) {
  if (name == "silence") return NoiseKind::silence;
  if (name == "white") return NoiseKind::white;
  if (name == "tone") return NoiseKind::tone;
  if (name == "speech-shaped") return NoiseKind::speech_shaped;
  throw InputError("unknown strategy: " + name);
}

WavEncoding parse_encoding(const std::string& name, WavEncoding fallback) {
  if (name == "pcm16") return WavEncoding::pcm16;
  if (name == "float32") return WavEncoding::float32;
  if (name == "auto") return fallback;
  throw InputError("unknown encoding: " + name);
}

// Write a wav via a temp file + rename so failed runs never leave partial
// output behind.
std::size_t write_wav_atomic(const AudioBuffer& buffer, const std::string& path,
                             WavEncoding encoding) {
  const std::string tmp = path + ".tmp";
  std::size_t clipped = 0;
  try {
    clipped = write_wav(buffer, tmp, encoding);
  } catch (...) {
    std::remove(tmp.c_str());
    throw;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw InputError("cannot move temp file into place at: " + path);
  }
  return clipped;
}

void warn_clipping(std::size_t clipped, const std::string& path) {
  if (clipped > 0) {
    std::cerr << "warning: clipped " << clipped << " out-of-range samples writing " << path
              << "\n";
  }
}

void warn_unmatched(const std::vector<std::string>& unmatched) {
  for (const auto& phrase : unmatched) {
    std::cerr << "warning: target phrase not found in alignment: \"" << phrase << "\"\n";
  }
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

// Run fn(0..n-1) on up to `jobs` threads; exceptions are rethrown on the
// calling thread. Results must be written to pre-sized slots so batch output
// stays in input order.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------
// mask / unmask

struct MaskOpts {
  std::string input;
  std::string output;
  SpanSource spans;
  std::string strategy = "white";
  std::string mode = "replace";
  std::optional<double> snr_db;
  bool reversible = false;
  std::string sidecar_path;
  double ramp_ms = 5.0;
  double tone_freq = 1000.0;
  bool modulated = false;
  bool downmix = false;
  std::string encoding = "auto";
};

int run_mask(const MaskOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);
  report.add_input(o.input);

  const WavFile in = read_wav(o.input, o.downmix);

  std::vector<std::string> unmatched;
  const SpanSet spans = resolve_spans(o.spans, &unmatched, &report);
  warn_unmatched(unmatched);
  if (spans.empty()) {
    std::cerr << "warning: no spans to mask; output will be identical to the input\n";
  }

  MaskSpec spec;
  spec.mode = o.mode == "additive" ? MaskMode::additive : MaskMode::replace;
  spec.noise.kind = parse_strategy(o.strategy);
  spec.noise.tone_freq = o.tone_freq;
  spec.noise.modulated = o.modulated;
  spec.noise.seed = g.seed;
  spec.snr_db = o.snr_db;
  spec.reversible = o.reversible;
  spec.ramp_ms = o.ramp_ms;

  auto [masked, sidecar] = apply_mask(in.audio, spans, spec);

  WavEncoding enc = parse_encoding(o.encoding, in.encoding);
  if (o.reversible) {
    if (o.encoding == "pcm16") {
      throw InputError("--reversible requires float32 output (pcm16 would quantize the "
                       "masked audio and break the sidecar digest)");
    }
    enc = WavEncoding::float32;
  }

  const std::size_t clipped = write_wav_atomic(masked, o.output, enc);
  warn_clipping(clipped, o.output);

  std::string sidecar_path;
  if (sidecar.has_value()) {
    sidecar_path = o.sidecar_path.empty() ? o.output + ".sidecar" : o.sidecar_path;
    const std::string tmp = sidecar_path + ".tmp";
    write_sidecar(*sidecar, tmp);
    if (std::rename(tmp.c_str(), sidecar_path.c_str()) != 0) {
      std::remove(tmp.c_str());
      throw InputError("cannot move temp file into place at: " + sidecar_path);
    }
  }

  json result;
  result["n_spans"] = spans.size();
  result["spans"] = spans_json(spans);
  result["total_masked_s"] = spans.total_duration();
  result["strategy"] = o.strategy;
  result["mode"] = o.mode;
  result["reversible"] = o.reversible;
  result["clipped_samples"] = clipped;
  result["output"] = {{"path", o.output}, {"fnv1a64", to_hex(digest_file(o.output))}};
  if (!sidecar_path.empty()) {
    result["sidecar"] = {{"path", sidecar_path}, {"fnv1a64", to_hex(digest_file(sidecar_path))}};
  }
  if (!unmatched.empty()) result["unmatched_targets"] = unmatched;
  report.set_result("mask", result);

  std::cerr << "masked " << spans.size() << " span(s), " << spans.total_duration()
            << " s total, strategy " << o.strategy << " (" << o.mode << ") -> " << o.output
            << "\n";
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

struct UnmaskOpts {
  std::string input;
  std::string sidecar;
  std::string output;
  std::string encoding = "float32";
  bool downmix = false;
};

int run_unmask(const UnmaskOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);
  report.add_input(o.input);
  report.add_input(o.sidecar);

  const WavFile in = read_wav(o.input, o.downmix);
  const MaskSidecar sidecar = read_sidecar(o.sidecar);
  const AudioBuffer restored = unmask(in.audio, sidecar);

  const std::size_t clipped =
      write_wav_atomic(restored, o.output, parse_encoding(o.encoding, in.encoding));
  warn_clipping(clipped, o.output);

  json result;
  result["restored_samples"] = sidecar.original.size();
  result["n_regions"] = sidecar.regions.size();
  result["output"] = {{"path", o.output}, {"fnv1a64", to_hex(digest_file(o.output))}};
  report.set_result("unmask", result);

  std::cerr << "restored " << sidecar.original.size() << " samples across "
            << sidecar.regions.size() << " region(s) -> " << o.output << "\n";
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

// ---------------------------------------------------------------------------
// score mer

struct MerOpts {
  std::string align_path;
  std::string align_format = "auto";
  std::string ref_spans;
  std::string ref_targets;
  std::string hyp_spans;
  std::string hyp_targets;
  double alpha = 2.0;
  double beta = 1.0;
  double overlap_threshold = 0.5;
  double pad_s = 0.0;
  bool recovery = false;
};

int run_score_mer(const MerOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);
  report.add_input(o.align_path);

  SpanSource fmt_probe;
  fmt_probe.align_path = o.align_path;
  fmt_probe.align_format = o.align_format;
  const Transcript transcript = parse_alignment(o.align_path, resolve_format(fmt_probe));

  auto side_spans = [&](const std::string& spans_path, const std::string& targets_path,
                        const char* which) {
    SpanSource src;
    src.spans_path = spans_path;
    src.targets_path = targets_path;
    src.align_path = o.align_path;
    src.align_format = o.align_format;
    src.pad_s = o.pad_s;
    if (spans_path.empty() && targets_path.empty()) {
      throw InputError(std::string("missing ") + which + " spans: use --" + which +
                       "-spans or --" + which + "-targets");
    }
    std::vector<std::string> unmatched;
    SpanSet spans;
    if (!spans_path.empty()) {
      spans = parse_spans(spans_path);
      report.add_input(spans_path);
      if (src.pad_s != 0.0) spans = spans.padded(src.pad_s);
    } else {
      const auto phrases = parse_targets(targets_path);
      auto match = spans_for_targets(transcript, phrases);
      spans = std::move(match.spans);
      unmatched = std::move(match.unmatched);
      report.add_input(targets_path);
      if (src.pad_s != 0.0) spans = spans.padded(src.pad_s);
    }
    warn_unmatched(unmatched);
    return spans;
  };

  const SpanSet ref = side_spans(o.ref_spans, o.ref_targets, "ref");
  const SpanSet hyp = side_spans(o.hyp_spans, o.hyp_targets, "hyp");

  const auto ref_labels = word_mask_labels(transcript, ref, o.overlap_threshold);
  const auto hyp_labels = word_mask_labels(transcript, hyp, o.overlap_threshold);

  const MerConfig config{o.alpha, o.beta};
  const ConfusionCounts counts = o.recovery ? recovery_confusion(ref_labels, hyp_labels)
                                            : confusion(ref_labels, hyp_labels);
  const double value = mer(counts, config);

  json result;
  result["counts"] = {{"tp", counts.tp}, {"tn", counts.tn}, {"fn", counts.fn}, {"fp", counts.fp}};
  result["alpha"] = o.alpha;
  result["beta"] = o.beta;
  result["overlap_threshold"] = o.overlap_threshold;
  result["n_words"] = counts.total();
  result["recovery"] = o.recovery;
  result["value"] = value;
  report.set_result("mer", result);

  std::cerr << (o.recovery ? "recovery mer = " : "mer = ") << value << " (tp=" << counts.tp
            << " tn=" << counts.tn << " fn=" << counts.fn << " fp=" << counts.fp
            << ", alpha=" << o.alpha << " beta=" << o.beta << ")\n";
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

// ---------------------------------------------------------------------------
// score stoi

struct StoiOpts {
  std::string clean;
  std::string processed;
  std::string pairs;
  bool downmix = false;
};

int run_score_stoi(const StoiOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);

  std::vector<std::pair<std::string, std::string>> pairs;
  if (!o.pairs.empty()) {
    std::ifstream in(o.pairs);
    if (!in) throw InputError("cannot open pairs file: " + o.pairs);
    report.add_input(o.pairs);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto tokens = tokenize(line);
      if (tokens.size() != 2) {
        throw InputError(o.pairs + ":" + std::to_string(line_no) +
                         ": expected 'clean.wav processed.wav'");
      }
      pairs.emplace_back(tokens[0], tokens[1]);
    }
    if (pairs.empty()) throw InputError("pairs file lists no files: " + o.pairs);
  } else {
    if (o.clean.empty() || o.processed.empty()) {
      throw InputError("score stoi needs --clean and --processed, or --pairs");
    }
    pairs.emplace_back(o.clean, o.processed);
  }
  for (const auto& [c, p] : pairs) {
    report.add_input(c);
    report.add_input(p);
  }

  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), g.jobs, [&](std::size_t i) {
    const WavFile clean = read_wav(pairs[i].first, o.downmix);
    const WavFile processed = read_wav(pairs[i].second, o.downmix);
    values[i] = stoi(clean.audio, processed.audio);
  });

  double mean = 0.0;
  auto arr = json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    arr.push_back({{"clean", pairs[i].first},
                   {"processed", pairs[i].second},
                   {"value", values[i]}});
    mean += values[i];
  }
  mean /= static_cast<double>(pairs.size());

  json result;
  result["pairs"] = arr;
  result["mean"] = mean;
  result["value"] = pairs.size() == 1 ? json(values[0]) : json(mean);
  report.set_result("stoi", result);

  if (pairs.size() == 1) {
    std::cerr << "stoi = " << values[0] << "\n";
  } else {
    std::cerr << "stoi mean over " << pairs.size() << " pairs = " << mean << "\n";
  }
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

// ---------------------------------------------------------------------------
// score wer

struct WerOpts {
  std::string ref;
  std::string hyp;
  bool ids = false;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open transcript: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

int run_score_wer(const WerOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);
  report.add_input(o.ref);
  report.add_input(o.hyp);

  const auto ref_lines = read_lines(o.ref);
  const auto hyp_lines = read_lines(o.hyp);
  if (ref_lines.size() != hyp_lines.size()) {
    throw InputError("transcript line counts differ: " + o.ref + " has " +
                     std::to_string(ref_lines.size()) + ", " + o.hyp + " has " +
                     std::to_string(hyp_lines.size()));
  }

  std::vector<WerBreakdown> per(ref_lines.size());
  std::vector<std::string> ids(ref_lines.size());
  parallel_for(ref_lines.size(), g.jobs, [&](std::size_t i) {
    auto ref_tokens = tokenize(ref_lines[i]);
    auto hyp_tokens = tokenize(hyp_lines[i]);
    if (o.ids) {
      if (ref_tokens.empty() || hyp_tokens.empty()) {
        throw InputError(o.ref + ":" + std::to_string(i + 1) +
                         ": --ids set but the line has no id column");
      }
      if (ref_tokens.front() != hyp_tokens.front()) {
        throw InputError("utterance ids disagree on line " + std::to_string(i + 1) + ": '" +
                         ref_tokens.front() + "' vs '" + hyp_tokens.front() + "'");
      }
      ids[i] = ref_tokens.front();
      ref_tokens.erase(ref_tokens.begin());
      hyp_tokens.erase(hyp_tokens.begin());
    }
    if (ref_tokens.empty()) {
      throw InputError(o.ref + ":" + std::to_string(i + 1) + ": empty reference line");
    }
    per[i] = wer(ref_tokens, hyp_tokens);
  });

  const WerBreakdown total = aggregate(per);

  auto breakdown_json = [&](const WerBreakdown& w) {
    return json{{"S", w.substitutions},
                {"D", w.deletions},
                {"I", w.insertions},
                {"N", w.ref_len},
                {"rate", w.rate}};
  };
  auto arr = json::array();
  for (std::size_t i = 0; i < per.size(); ++i) {
    json entry = breakdown_json(per[i]);
    entry["line"] = i + 1;
    if (o.ids) entry["id"] = ids[i];
    arr.push_back(entry);
  }

  json result = breakdown_json(total);
  result["per_utterance"] = arr;
  result["value"] = total.rate;
  report.set_result("wer", result);

  std::cerr << "wer = " << total.rate << " (S=" << total.substitutions
            << " D=" << total.deletions << " I=" << total.insertions << " N=" << total.ref_len
            << ", " << per.size() << " utterance(s))\n";
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

// ---------------------------------------------------------------------------
// score asv

struct AsvOpts {
  std::string scores;
  std::string condition;
  bool emit_det = false;
};

int run_score_asv(const AsvOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);
  report.add_input(o.scores);

  const TrialScores scores = read_trial_scores(o.scores);
  const double eer_value = eer(scores);
  const double cllr_value = cllr(scores);

  json result;
  result["n_target"] = scores.target.size();
  result["n_nontarget"] = scores.nontarget.size();
  result["eer"] = eer_value;
  result["cllr"] = cllr_value;
  if (!o.condition.empty()) result["condition"] = o.condition;

  if (o.emit_det) {
    const auto points = det_points(scores);
    // Large trial lists make for enormous staircases; keep the report usable
    // by sampling evenly down to ~200 points, always keeping both endpoints.
    const std::size_t max_points = 200;
    auto arr = json::array();
    const std::size_t n = points.size();
    const std::size_t step = n <= max_points ? 1 : (n + max_points - 1) / max_points;
    for (std::size_t i = 0; i < n; i += step) {
      const auto& p = points[i];
      arr.push_back({{"threshold", std::isfinite(p.threshold) ? json(p.threshold) : json()},
                     {"far", p.far},
                     {"frr", p.frr}});
    }
    if ((n - 1) % step != 0) {
      const auto& p = points[n - 1];
      arr.push_back({{"threshold", std::isfinite(p.threshold) ? json(p.threshold) : json()},
                     {"far", p.far},
                     {"frr", p.frr}});
    }
    result["det_points"] = arr;
    result["det_points_total"] = n;
  }
  report.set_result("asv", result);

  std::cerr << "eer = " << eer_value << ", cllr = " << cllr_value << " bits ("
            << scores.target.size() << " target / " << scores.nontarget.size()
            << " nontarget trials)\n";
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

// ---------------------------------------------------------------------------
// recover-exp

struct RecoverOpts {
  std::string input;
  SpanSource spans;
  std::string strategy = "speech-shaped";
  double snr_db = -5.0;
  double lc_db = 0.0;
  double ramp_ms = 5.0;
  double tone_freq = 1000.0;
  bool modulated = true;
  bool span_stoi = false;
  bool downmix = false;
};

int run_recover_exp(const RecoverOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);
  report.add_input(o.input);

  const WavFile in = read_wav(o.input, o.downmix);
  std::vector<std::string> unmatched;
  const SpanSet spans = resolve_spans(o.spans, &unmatched, &report);
  warn_unmatched(unmatched);
  if (spans.empty()) throw InputError("the recoverability experiment needs at least one span");

  NoiseSpec masker;
  masker.kind = parse_strategy(o.strategy);
  masker.tone_freq = o.tone_freq;
  masker.modulated = o.modulated;
  masker.seed = g.seed;

  RecoverabilityOptions options;
  options.snr_db = o.snr_db;
  options.ibm.lc_db = o.lc_db;
  options.ramp_ms = o.ramp_ms;
  options.span_stoi = o.span_stoi;

  const RecoverabilityReport rec = recoverability_experiment(in.audio, spans, masker, options);

  json result;
  result["stoi_additive"] = rec.stoi_additive;
  result["stoi_replacement"] = rec.stoi_replacement;
  result["difference"] = rec.stoi_additive - rec.stoi_replacement;
  if (rec.stoi_additive_span.has_value()) {
    result["stoi_additive_span"] = *rec.stoi_additive_span;
    result["stoi_replacement_span"] = *rec.stoi_replacement_span;
  }
  result["snr_db"] = o.snr_db;
  result["lc_db"] = o.lc_db;
  result["strategy"] = o.strategy;
  result["modulated"] = o.modulated;
  result["n_spans"] = spans.size();
  result["spans"] = spans_json(spans);
  report.set_result("recoverability", result);

  std::cerr << "stoi additive = " << rec.stoi_additive
            << ", replacement = " << rec.stoi_replacement
            << ", difference = " << rec.stoi_additive - rec.stoi_replacement << "\n";
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

// ---------------------------------------------------------------------------
// demo

struct DemoOpts {
  std::string out_dir = ".";
  double duration_s = 3.0;
  int rate = 16000;
};

int run_demo(const DemoOpts& o, const GlobalOpts& g, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report(command, g.seed);

  const DemoUtterance utt = synth_utterance(g.seed, o.duration_s, o.rate);
  const std::string wav_path = o.out_dir + "/demo.wav";
  const std::string align_path = o.out_dir + "/demo_align.tsv";

  write_wav_atomic(utt.audio, wav_path, WavEncoding::float32);

  std::ostringstream align;
  align << "# word\tstart_sec\tend_sec\n";
  for (const auto& w : utt.words.words) {
    align << w.word << '\t' << w.start << '\t' << w.end << '\n';
  }
  write_file_atomic(align_path, align.str());

  json result;
  result["wav"] = {{"path", wav_path}, {"fnv1a64", to_hex(digest_file(wav_path))}};
  result["alignment"] = {{"path", align_path}, {"fnv1a64", to_hex(digest_file(align_path))}};
  result["duration_s"] = utt.audio.duration();
  result["sample_rate"] = o.rate;
  auto words = json::array();
  for (const auto& w : utt.words.words) {
    words.push_back({{"word", w.word}, {"start", w.start}, {"end", w.end}});
  }
  result["words"] = words;
  report.set_result("demo", result);

  std::cerr << "wrote " << wav_path << " (" << utt.audio.duration() << " s, "
            << utt.words.words.size() << " words) and " << align_path << "\n";
  report.set_timing_ms(std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count());
  report.write(g.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mask sensitive spoken content in audio and evaluate the masking"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--seed", global.seed,
                 "RNG seed; fixed default so runs reproduce (env MASKBENCH_SEED)")
      ->envname("MASKBENCH_SEED")
      ->capture_default_str();
  app.add_option("--out", global.out, "write the JSON report here instead of stdout");
  app.add_option("--jobs", global.jobs, "worker threads for batch scoring")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // mask
  MaskOpts mask_opts;
  auto* mask_cmd = app.add_subcommand("mask", "mask target spans of a wav file");
  mask_cmd->add_option("input", mask_opts.input, "input wav")->required();
  mask_cmd->add_option("output", mask_opts.output, "masked wav to write")->required();
  add_span_flags(mask_cmd, &mask_opts.spans);
  mask_cmd->add_option("--strategy", mask_opts.strategy, "masker kind")
      ->check(CLI::IsMember({"silence", "white", "tone", "speech-shaped"}))
      ->capture_default_str();
  mask_cmd->add_option("--mode", mask_opts.mode, "replace the span or mix into it")
      ->check(CLI::IsMember({"replace", "additive"}))
      ->capture_default_str();
  mask_cmd->add_option("--snr-db", mask_opts.snr_db,
                       "masker level vs in-span speech power (required for additive)");
  mask_cmd->add_flag("--reversible", mask_opts.reversible,
                     "write a sidecar that lets unmask restore the original exactly");
  mask_cmd->add_option("--sidecar", mask_opts.sidecar_path,
                       "sidecar path (default: OUTPUT.sidecar)");
  mask_cmd->add_option("--ramp-ms", mask_opts.ramp_ms, "raised-cosine edge ramp inside spans")
      ->capture_default_str();
  mask_cmd->add_option("--tone-freq", mask_opts.tone_freq, "bleep frequency for --strategy tone")
      ->capture_default_str();
  mask_cmd->add_flag("--modulated", mask_opts.modulated,
                     "amplitude-modulate speech-shaped noise (<= 8 Hz envelope)");
  mask_cmd->add_flag("--downmix", mask_opts.downmix, "average multichannel input to mono");
  mask_cmd->add_option("--encoding", mask_opts.encoding, "output sample encoding")
      ->check(CLI::IsMember({"auto", "pcm16", "float32"}))
      ->capture_default_str();

  // unmask
  UnmaskOpts unmask_opts;
  auto* unmask_cmd = app.add_subcommand("unmask", "restore the original audio from a sidecar");
  unmask_cmd->add_option("input", unmask_opts.input, "masked wav")->required();
  unmask_cmd->add_option("sidecar", unmask_opts.sidecar, "sidecar written by mask --reversible")
      ->required();
  unmask_cmd->add_option("output", unmask_opts.output, "restored wav to write")->required();
  unmask_cmd->add_option("--encoding", unmask_opts.encoding, "output sample encoding")
      ->check(CLI::IsMember({"pcm16", "float32"}))
      ->capture_default_str();
  unmask_cmd->add_flag("--downmix", unmask_opts.downmix, "average multichannel input to mono");

  // score
  auto* score_cmd = app.add_subcommand("score", "evaluation metrics");
  score_cmd->require_subcommand(1);
  score_cmd->fallthrough();

  MerOpts mer_opts;
  auto* mer_cmd = score_cmd->add_subcommand(
      "mer", "mask error rate: weighted word-level masking errors");
  mer_cmd->add_option("--align", mer_opts.align_path, "word alignment file")->required();
  mer_cmd->add_option("--align-format", mer_opts.align_format, "alignment format")
      ->check(CLI::IsMember({"auto", "tsv", "ctm"}))
      ->capture_default_str();
  mer_cmd->add_option("--ref-spans", mer_opts.ref_spans, "ground-truth sensitive spans");
  mer_cmd->add_option("--ref-targets", mer_opts.ref_targets, "ground-truth target phrases");
  mer_cmd->add_option("--hyp-spans", mer_opts.hyp_spans, "spans the system actually masked");
  mer_cmd->add_option("--hyp-targets", mer_opts.hyp_targets, "phrases the system masked");
  mer_cmd->add_option("--alpha", mer_opts.alpha, "penalty for a sensitive word left unmasked")
      ->capture_default_str();
  mer_cmd->add_option("--beta", mer_opts.beta, "penalty for an ordinary word masked")
      ->capture_default_str();
  mer_cmd->add_option("--overlap-threshold", mer_opts.overlap_threshold,
                      "fraction of a word that must be covered to count as masked, (0,1]")
      ->capture_default_str();
  mer_cmd->add_option("--pad", mer_opts.pad_s, "widen every span by this many seconds per side")
      ->capture_default_str();
  mer_cmd->add_flag("--recovery", mer_opts.recovery,
                    "recovery scoring: ref = originally masked words, hyp = words still "
                    "masked after reversal");

  StoiOpts stoi_opts;
  auto* stoi_cmd = score_cmd->add_subcommand("stoi", "short-time objective intelligibility");
  stoi_cmd->add_option("--clean", stoi_opts.clean, "clean reference wav");
  stoi_cmd->add_option("--processed", stoi_opts.processed, "processed/degraded wav");
  stoi_cmd->add_option("--pairs", stoi_opts.pairs,
                       "batch file: lines 'clean.wav processed.wav' (scored with --jobs)");
  stoi_cmd->add_flag("--downmix", stoi_opts.downmix, "average multichannel input to mono");

  WerOpts wer_opts;
  auto* wer_cmd = score_cmd->add_subcommand(
      "wer", "word error rate (use phone tokens per line for PER)");
  wer_cmd->add_option("--ref", wer_opts.ref, "reference transcript, one utterance per line")
      ->required();
  wer_cmd->add_option("--hyp", wer_opts.hyp, "hypothesis transcript, aligned line-for-line")
      ->required();
  wer_cmd->add_flag("--ids", wer_opts.ids, "first token of each line is an utterance id");

  AsvOpts asv_opts;
  auto* asv_cmd = score_cmd->add_subcommand(
      "asv", "speaker-verification scoring: EER and Cllr from labeled scores");
  asv_cmd->add_option("--scores", asv_opts.scores,
                      "score file: lines 'target|nontarget<TAB>score' (natural-log LLRs "
                      "for Cllr)")
      ->required();
  asv_cmd->add_option("--condition", asv_opts.condition,
                      "free-text condition tag echoed into the report");
  asv_cmd->add_flag("--det-points", asv_opts.emit_det, "include the DET staircase in the report");

  // recover-exp
  RecoverOpts rec_opts;
  auto* rec_cmd = app.add_subcommand(
      "recover-exp", "additive-vs-replacement recoverability comparison (mask, "
                     "ideal-binary-mask recovery, STOI both ways)");
  rec_cmd->add_option("input", rec_opts.input, "clean speech wav")->required();
  add_span_flags(rec_cmd, &rec_opts.spans);
  rec_cmd->add_option("--strategy", rec_opts.strategy, "masker kind")
      ->check(CLI::IsMember({"white", "tone", "speech-shaped"}))
      ->capture_default_str();
  rec_cmd->add_option("--snr-db", rec_opts.snr_db, "masker level vs in-span speech power")
      ->capture_default_str();
  rec_cmd->add_option("--lc-db", rec_opts.lc_db, "ideal-binary-mask local criterion")
      ->capture_default_str();
  rec_cmd->add_option("--ramp-ms", rec_opts.ramp_ms, "mask edge ramp")->capture_default_str();
  rec_cmd->add_option("--tone-freq", rec_opts.tone_freq, "bleep frequency for --strategy tone")
      ->capture_default_str();
  rec_cmd->add_flag("--modulated,!--no-modulated", rec_opts.modulated,
                    "amplitude-modulate speech-shaped noise (default on)");
  rec_cmd->add_flag("--span-stoi", rec_opts.span_stoi,
                    "also report STOI over the masked spans alone");
  rec_cmd->add_flag("--downmix", rec_opts.downmix, "average multichannel input to mono");

  // demo
  DemoOpts demo_opts;
  auto* demo_cmd = app.add_subcommand(
      "demo", "synthesize a speech-like demo utterance with a word alignment");
  demo_cmd->add_option("--out-dir", demo_opts.out_dir, "directory for demo.wav and "
                                                       "demo_align.tsv")
      ->capture_default_str();
  demo_cmd->add_option("--duration", demo_opts.duration_s, "seconds")->capture_default_str();
  demo_cmd->add_option("--rate", demo_opts.rate, "sample rate, Hz")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = join_args(argc, argv);
  try {
    if (app.got_subcommand(mask_cmd)) return run_mask(mask_opts, global, command);
    if (app.got_subcommand(unmask_cmd)) return run_unmask(unmask_opts, global, command);
    if (app.got_subcommand(score_cmd)) {
      if (score_cmd->got_subcommand(mer_cmd)) return run_score_mer(mer_opts, global, command);
      if (score_cmd->got_subcommand(stoi_cmd)) return run_score_stoi(stoi_opts, global, command);
      if (score_cmd->got_subcommand(wer_cmd)) return run_score_wer(wer_opts, global, command);
      if (score_cmd->got_subcommand(asv_cmd)) return run_score_asv(asv_opts, global, command);
    }
    if (app.got_subcommand(rec_cmd)) return run_recover_exp(rec_opts, global, command);
    if (app.got_subcommand(demo_cmd)) return run_demo(demo_opts, global, command);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
