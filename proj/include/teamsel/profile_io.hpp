#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "teamsel/model.hpp"

// Profile files.
//
// CSV:   header `round,outcome,<label_1>,...,<label_n>`, then one line per
//        round `t,x_t,y_1t,...,y_nt` with t = 1..k in order. UTF-8, '.'
//        decimal separator, no quoting (labels must not contain commas).
// JSON:  {"labels": [...], "outcomes": [...], "forecasts": [[...], ...]}
//        with forecasts[i] the i-th expert's row.
//
// Files ending in ".json" take the JSON path, everything else the CSV path.
// Doubles are written with 17 significant digits, so save followed by load
// reproduces every value bit-exactly.

namespace teamsel {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PredictionProfile load_profile(const std::filesystem::path& path);
void save_profile(const PredictionProfile& profile,
                  const std::filesystem::path& path);

PredictionProfile parse_profile_csv(const std::string& text,
                                    const std::string& origin = "<csv>");
PredictionProfile parse_profile_json(const std::string& text,
                                     const std::string& origin = "<json>");

std::string profile_to_csv(const PredictionProfile& profile);
std::string profile_to_json(const PredictionProfile& profile);

/// 17-significant-digit decimal form used across all emitted files.
std::string format_double(double v);

}  // namespace teamsel
