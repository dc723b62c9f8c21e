// Accuracy accounting split by known/unknown words, error-reduction
// arithmetic and fixed-width report tables.
#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "combitag/annotation.hpp"
#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"

namespace combitag {

struct EvalReport {
  std::string source_name;
  std::size_t total_count = 0, known_count = 0, unknown_count = 0;
  std::size_t total_correct = 0, known_correct = 0, unknown_correct = 0;
  // Percentages in [0,100]; empty when the corresponding split has no
  // tokens (rendered as "--").
  std::optional<double> total_acc, known_acc, unknown_acc;
  double unknown_pct = 0.0;
};

// A token is correct iff the predicted symbol byte-equals the gold tag;
// it is unknown iff its form is missing from the training vocabulary.
inline EvalReport accuracy(const AnnotationColumn& pred, const Corpus& gold,
                           const std::set<std::string>& train_vocab) {
  if (pred.values.size() != gold.token_count())
    throw AlignmentError(std::min(pred.values.size(), gold.token_count()),
                         "prediction column does not match corpus length");
  EvalReport report;
  report.source_name = pred.source_name;
  std::size_t position = 0;
  for (const auto& sent : gold.sentences)
    for (const auto& tok : sent) {
      bool correct = pred.values[position] == tok.tag;
      bool unknown = train_vocab.find(tok.form) == train_vocab.end();
      ++report.total_count;
      report.total_correct += correct;
      if (unknown) {
        ++report.unknown_count;
        report.unknown_correct += correct;
      } else {
        ++report.known_count;
        report.known_correct += correct;
      }
      ++position;
    }
  auto pct = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0)
      return std::nullopt;
    return 100.0 * static_cast<double>(num) / static_cast<double>(den);
  };
  report.total_acc = pct(report.total_correct, report.total_count);
  report.known_acc = pct(report.known_correct, report.known_count);
  report.unknown_acc = pct(report.unknown_correct, report.unknown_count);
  if (report.total_count > 0)
    report.unknown_pct = 100.0 * static_cast<double>(report.unknown_count) /
                         static_cast<double>(report.total_count);
  return report;
}

// Relative change in error rate, in percent; negative means fewer errors.
inline double error_reduction(double baseline_acc, double new_acc) {
  if (!(baseline_acc >= 0.0 && baseline_acc <= 100.0) ||
      !(new_acc >= 0.0 && new_acc <= 100.0))
    throw DomainError("accuracies must lie in [0,100]");
  if (baseline_acc == 100.0)
    throw DomainError("error reduction undefined for a perfect baseline");
  double base_err = 100.0 - baseline_acc;
  double new_err = 100.0 - new_acc;
  return 100.0 * (new_err - base_err) / base_err;
}

// The weighted identity behind every report: total accuracy from the
// unknown percentage and the two split accuracies.
inline double weighted_total_accuracy(double unknown_pct, double unknown_acc,
                                      double known_acc) {
  return (unknown_pct * unknown_acc + (100.0 - unknown_pct) * known_acc) /
         100.0;
}

enum class TableLayout { baseline, ablation, reduction };

namespace detail {

// Round half away from zero, then format with a fixed number of decimals.
inline std::string format_pct(std::optional<double> value, int decimals) {
  if (!value)
    return "--";
  double scale = decimals == 1 ? 10.0 : 100.0;
  double rounded = std::round(*value * scale) / scale;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  return buf;
}

inline std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

} // namespace detail

// Deterministic fixed-width table. The baseline layout shows the u/k/t
// triple per source plus the unknown-token percentage; ablation shows
// totals only; reduction expects (baseline, new) and appends a delta-error
// row at one decimal.
inline std::string render_table(const std::vector<EvalReport>& reports,
                                TableLayout layout) {
  if (reports.empty())
    throw DataError(0, "no reports to render");
  const std::size_t num_w = 8;
  std::size_t name_w = std::string("% unknown").size();
  for (const auto& r : reports)
    name_w = std::max(name_w, r.source_name.size());
  if (layout == TableLayout::reduction)
    name_w = std::max(name_w, std::string("delta error").size());

  std::string out;
  auto row = [&](const std::string& name, const std::string& u,
                 const std::string& k, const std::string& t) {
    out += detail::pad_right(name, name_w);
    out += detail::pad_left(u, num_w);
    out += detail::pad_left(k, num_w);
    out += detail::pad_left(t, num_w);
    out += '\n';
  };
  auto total_row = [&](const std::string& name, const std::string& t) {
    out += detail::pad_right(name, name_w);
    out += detail::pad_left(t, num_w);
    out += '\n';
  };

  switch (layout) {
  case TableLayout::baseline:
    row("source", "u", "k", "t");
    for (const auto& r : reports)
      row(r.source_name, detail::format_pct(r.unknown_acc, 2),
          detail::format_pct(r.known_acc, 2),
          detail::format_pct(r.total_acc, 2));
    row("% unknown", "", "", detail::format_pct(reports.front().unknown_pct, 2));
    break;
  case TableLayout::ablation:
    total_row("source", "t");
    for (const auto& r : reports)
      total_row(r.source_name, detail::format_pct(r.total_acc, 2));
    break;
  case TableLayout::reduction: {
    if (reports.size() != 2)
      throw DataError(reports.size(), "reduction layout needs exactly two reports");
    row("source", "u", "k", "t");
    for (const auto& r : reports)
      row(r.source_name, detail::format_pct(r.unknown_acc, 2),
          detail::format_pct(r.known_acc, 2),
          detail::format_pct(r.total_acc, 2));
    auto delta = [](std::optional<double> base,
                    std::optional<double> now) -> std::optional<double> {
      if (!base || !now || *base == 100.0)
        return std::nullopt;
      return error_reduction(*base, *now);
    };
    const EvalReport& base = reports[0];
    const EvalReport& now = reports[1];
    row("delta error", detail::format_pct(delta(base.unknown_acc, now.unknown_acc), 1),
        detail::format_pct(delta(base.known_acc, now.known_acc), 1),
        detail::format_pct(delta(base.total_acc, now.total_acc), 1));
    break;
  }
  }
  return out;
}

// Machine-readable metric<TAB>value lines.
inline std::string render_tsv(const EvalReport& report) {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += '\t';
    out += value;
    out += '\n';
  };
  line("source", report.source_name);
  line("total_count", std::to_string(report.total_count));
  line("known_count", std::to_string(report.known_count));
  line("unknown_count", std::to_string(report.unknown_count));
  line("total_acc", detail::format_pct(report.total_acc, 2));
  line("known_acc", detail::format_pct(report.known_acc, 2));
  line("unknown_acc", detail::format_pct(report.unknown_acc, 2));
  line("unknown_pct", detail::format_pct(report.unknown_pct, 2));
  return out;
}

} // namespace combitag
