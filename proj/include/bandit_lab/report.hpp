// Copyright 2026 The bandit_lab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Per-epoch CSV records and cross-replication summaries.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

#include "bandit_lab/harness.hpp"

namespace bandit_lab {

class CsvError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kFixedColumns[] = {
    "run_id",         "strategy",        "replication",   "epoch",
    "optimal_arm",    "mu_star",         "realized_reward", "pseudo_regret",
    "realized_regret", "cum_reward",     "cum_pseudo_regret", "cum_realized_regret"};

inline std::vector<std::string> csv_header(std::size_t num_arms) {
  std::vector<std::string> cols(std::begin(kFixedColumns), std::end(kFixedColumns));
  for (std::size_t k = 0; k < num_arms; ++k) cols.push_back("count_arm_" + std::to_string(k));
  return cols;
}

// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, end);
}

inline std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace detail {

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << "\r\n";
}

// Splits CSV text into rows of fields. Accepts CRLF or LF line ends and
// quoted fields with embedded separators.
inline std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  char c;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get(c);
      end_row();
    } else if (c == '\n') {
      end_row();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw CsvError("unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

}  // namespace detail

// Rows must already be grouped by (strategy, replication, epoch);
// run_experiment produces that order.
inline void write_csv(const std::vector<RunRecord>& records, std::size_t num_arms, std::ostream& out) {
  detail::write_row(out, csv_header(num_arms));
  for (const auto& r : records) {
    const auto& m = r.metrics;
    if (m.counts.size() != num_arms) throw std::invalid_argument("record arm count does not match header");
    std::vector<std::string> f{r.run_id,
                               r.strategy,
                               std::to_string(r.replication),
                               std::to_string(m.epoch),
                               std::to_string(m.optimal_arm.index),
                               format_double(m.mu_star),
                               format_double(m.realized_reward),
                               format_double(m.pseudo_regret),
                               format_double(m.realized_regret),
                               format_double(r.cum_reward),
                               format_double(r.cum_pseudo_regret),
                               format_double(r.cum_realized_regret)};
    for (std::size_t c : m.counts) f.push_back(std::to_string(c));
    detail::write_row(out, f);
  }
}

inline void write_csv_file(const std::vector<RunRecord>& records, std::size_t num_arms,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(records, num_arms, out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

namespace detail {

template <class T>
T parse_number(const std::string& text, std::size_t row, std::string_view column) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw CsvError("row " + std::to_string(row) + ", column '" + std::string(column) +
                   "': cannot parse \"" + text + "\"");
  }
  return value;
}

}  // namespace detail

struct CsvData {
  std::size_t num_arms = 0;
  std::vector<RunRecord> records;
};

// Inverse of write_csv. Row numbers in errors count the header as row 1.
inline CsvData read_csv(std::istream& in) {
  auto rows = detail::parse_csv(in);
  if (rows.empty()) throw CsvError("row 1: missing header");
  const auto& header = rows.front();
  const std::size_t fixed = std::size(kFixedColumns);
  for (std::size_t i = 0; i < fixed; ++i) {
    if (i >= header.size()) throw CsvError("header: missing column '" + std::string(kFixedColumns[i]) + "'");
    if (header[i] != kFixedColumns[i]) {
      throw CsvError("header: column " + std::to_string(i + 1) + " is '" + header[i] + "', expected '" +
                     std::string(kFixedColumns[i]) + "'");
    }
  }
  CsvData data;
  data.num_arms = header.size() - fixed;
  if (data.num_arms < 2) throw CsvError("header: expected at least two count_arm_* columns");
  for (std::size_t k = 0; k < data.num_arms; ++k) {
    const std::string want = "count_arm_" + std::to_string(k);
    if (header[fixed + k] != want) {
      throw CsvError("header: column " + std::to_string(fixed + k + 1) + " is '" + header[fixed + k] +
                     "', expected '" + want + "'");
    }
  }
  const auto cols = csv_header(data.num_arms);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const std::size_t row = i + 1;
    if (f.size() != header.size()) {
      throw CsvError("row " + std::to_string(row) + ": " + std::to_string(f.size()) + " fields, expected " +
                     std::to_string(header.size()));
    }
    RunRecord r;
    r.run_id = f[0];
    r.strategy = f[1];
    r.replication = detail::parse_number<std::size_t>(f[2], row, cols[2]);
    auto& m = r.metrics;
    m.epoch = detail::parse_number<std::int64_t>(f[3], row, cols[3]);
    m.optimal_arm = ArmId{detail::parse_number<std::size_t>(f[4], row, cols[4])};
    m.mu_star = detail::parse_number<double>(f[5], row, cols[5]);
    m.realized_reward = detail::parse_number<double>(f[6], row, cols[6]);
    m.pseudo_regret = detail::parse_number<double>(f[7], row, cols[7]);
    m.realized_regret = detail::parse_number<double>(f[8], row, cols[8]);
    r.cum_reward = detail::parse_number<double>(f[9], row, cols[9]);
    r.cum_pseudo_regret = detail::parse_number<double>(f[10], row, cols[10]);
    r.cum_realized_regret = detail::parse_number<double>(f[11], row, cols[11]);
    for (std::size_t k = 0; k < data.num_arms; ++k) {
      m.counts.push_back(detail::parse_number<std::size_t>(f[fixed + k], row, cols[fixed + k]));
    }
    data.records.push_back(std::move(r));
  }
  return data;
}

inline CsvData read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read_csv(in);
}

struct SummaryRow {
  std::string strategy;
  std::size_t replications = 0;
  double mean_regret = 0.0;
  double median_regret = 0.0;
  double mean_reward = 0.0;
  double median_reward = 0.0;
  double mean_pseudo_regret = 0.0;
  double median_pseudo_regret = 0.0;
};

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

inline double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Final cumulative values of each (strategy, replication) run, keyed by
// strategy then replication. Rejects grids with gaps or duplicates.
struct FinalValues {
  std::vector<std::size_t> replications;
  std::vector<double> realized_regret;
  std::vector<double> reward;
  std::vector<double> pseudo_regret;
};

inline std::map<std::string, FinalValues> final_values(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");
  // strategy -> replication -> epoch -> record
  std::map<std::string, std::map<std::size_t, std::map<std::int64_t, const RunRecord*>>> grid;
  for (const auto& r : records) {
    auto& slot = grid[r.strategy][r.replication][r.metrics.epoch];
    if (slot) {
      throw std::invalid_argument("duplicate record for strategy '" + r.strategy + "', replication " +
                                  std::to_string(r.replication) + ", epoch " + std::to_string(r.metrics.epoch));
    }
    slot = &r;
  }
  const auto& first_reps = grid.begin()->second;
  const std::size_t num_epochs = first_reps.begin()->second.size();
  std::map<std::string, FinalValues> out;
  for (const auto& [strategy, reps] : grid) {
    if (reps.size() != first_reps.size() ||
        !std::equal(reps.begin(), reps.end(), first_reps.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; })) {
      throw std::invalid_argument("incomplete grid: strategy '" + strategy + "' has a different replication set");
    }
    FinalValues fv;
    for (const auto& [rep, epochs] : reps) {
      if (epochs.size() != num_epochs || epochs.begin()->first != 0 ||
          epochs.rbegin()->first != static_cast<std::int64_t>(num_epochs) - 1) {
        throw std::invalid_argument("incomplete grid: strategy '" + strategy + "', replication " +
                                    std::to_string(rep) + " does not cover epochs 0.." +
                                    std::to_string(num_epochs - 1));
      }
      const RunRecord& last = *epochs.rbegin()->second;
      fv.replications.push_back(rep);
      fv.realized_regret.push_back(last.cum_realized_regret);
      fv.reward.push_back(last.cum_reward);
      fv.pseudo_regret.push_back(last.cum_pseudo_regret);
    }
    out.emplace(strategy, std::move(fv));
  }
  return out;
}

// One row per strategy, ordered by ascending median cumulative realized
// regret (name breaks ties).
inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  for (const auto& [strategy, fv] : final_values(records)) {
    rows.push_back({strategy, fv.replications.size(), mean(fv.realized_regret), median(fv.realized_regret),
                    mean(fv.reward), median(fv.reward), mean(fv.pseudo_regret), median(fv.pseudo_regret)});
  }
  std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    return std::tie(a.median_regret, a.strategy) < std::tie(b.median_regret, b.strategy);
  });
  return rows;
}

inline void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  detail::write_row(out, {"strategy", "replications", "mean_cum_realized_regret", "median_cum_realized_regret",
                          "mean_cum_reward", "median_cum_reward", "mean_cum_pseudo_regret",
                          "median_cum_pseudo_regret"});
  for (const auto& r : rows) {
    detail::write_row(out, {r.strategy, std::to_string(r.replications), format_double(r.mean_regret),
                            format_double(r.median_regret), format_double(r.mean_reward),
                            format_double(r.median_reward), format_double(r.mean_pseudo_regret),
                            format_double(r.median_pseudo_regret)});
  }
}

inline std::string render_summary(const std::vector<SummaryRow>& rows) {
  const std::vector<std::string> head{"strategy", "reps", "median regret", "mean regret",
                                      "median reward", "mean reward", "median pseudo"};
  std::vector<std::vector<std::string>> cells{head};
  auto fixed = [](double v, int prec) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(prec) << v;
    return s.str();
  };
  for (const auto& r : rows) {
    cells.push_back({r.strategy, std::to_string(r.replications), fixed(r.median_regret, 4),
                     fixed(r.mean_regret, 4), fixed(r.median_reward, 2), fixed(r.mean_reward, 2),
                     fixed(r.median_pseudo_regret, 4)});
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      if (i) out << "  ";
      if (i == 0) {
        out << std::left << std::setw(static_cast<int>(width[i])) << cells[r][i];
      } else {
        out << std::right << std::setw(static_cast<int>(width[i])) << cells[r][i];
      }
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace bandit_lab
