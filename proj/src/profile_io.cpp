#include "teamsel/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace teamsel {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_cell(const std::string& origin, std::size_t line, std::size_t col,
                  const std::string& cell) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    fail(origin, line, "column " + std::to_string(col) + ": not a number: '" + cell + "'");
  if (!std::isfinite(v))
    fail(origin, line, "column " + std::to_string(col) + ": non-finite value");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PredictionProfile parse_profile_csv(const std::string& text,
                                    const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(origin, 1, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv(line);
  if (header.size() < 3 || header[0] != "round" || header[1] != "outcome")
    fail(origin, 1, "malformed header, expected 'round,outcome,<labels...>'");
  std::vector<std::string> labels(header.begin() + 2, header.end());
  const std::size_t n = labels.size();

  std::vector<double> outcomes;
  std::vector<std::vector<double>> rows;  // per round: n forecasts
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != n + 2)
      fail(origin, lineno,
           "ragged row: expected " + std::to_string(n + 2) + " cells, got " +
               std::to_string(cells.size()));
    const double round_no = parse_cell(origin, lineno, 1, cells[0]);
    if (round_no != static_cast<double>(outcomes.size() + 1))
      fail(origin, lineno,
           "round numbers must be 1..k in order; expected " +
               std::to_string(outcomes.size() + 1));
    outcomes.push_back(parse_cell(origin, lineno, 2, cells[1]));
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = parse_cell(origin, lineno, i + 3, cells[i + 2]);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) fail(origin, lineno, "no rounds");

  Matrix forecasts(n, rows.size());
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t i = 0; i < n; ++i) forecasts(i, t) = rows[t][i];
  return PredictionProfile(std::move(forecasts), std::move(outcomes),
                           std::move(labels));
}

PredictionProfile parse_profile_json(const std::string& text,
                                     const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("outcomes") || !j.contains("forecasts"))
    throw ParseError(origin + ": expected object with 'outcomes' and 'forecasts'");

  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();

  std::vector<double> outcomes;
  for (const auto& v : j["outcomes"]) {
    if (!v.is_number()) throw ParseError(origin + ": non-numeric outcome");
    outcomes.push_back(v.get<double>());
  }
  const std::size_t k = outcomes.size();
  if (k == 0) throw ParseError(origin + ": no rounds");

  const auto& fc = j["forecasts"];
  if (!fc.is_array() || fc.empty())
    throw ParseError(origin + ": forecasts must be a non-empty array of rows");
  Matrix forecasts(fc.size(), k);
  for (std::size_t i = 0; i < fc.size(); ++i) {
    const auto& row = fc[i];
    if (!row.is_array() || row.size() != k)
      throw ParseError(origin + ": forecasts row " + std::to_string(i) +
                       " has wrong length");
    for (std::size_t t = 0; t < k; ++t) {
      if (!row[t].is_number())
        throw ParseError(origin + ": forecasts[" + std::to_string(i) + "][" +
                         std::to_string(t) + "] not a number");
      forecasts(i, t) = row[t].get<double>();
    }
  }
  try {
    return PredictionProfile(std::move(forecasts), std::move(outcomes),
                             std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

std::string profile_to_csv(const PredictionProfile& profile) {
  std::string out = "round,outcome";
  for (const auto& l : profile.labels()) out += "," + l;
  out += "\n";
  for (std::size_t t = 0; t < profile.n_rounds(); ++t) {
    out += std::to_string(t + 1);
    out += ",";
    out += format_double(profile.outcomes()[t]);
    for (std::size_t i = 0; i < profile.n_experts(); ++i) {
      out += ",";
      out += format_double(profile.forecasts()(i, t));
    }
    out += "\n";
  }
  return out;
}

std::string profile_to_json(const PredictionProfile& profile) {
  nlohmann::json j;
  j["labels"] = profile.labels();
  j["outcomes"] = profile.outcomes();
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < profile.n_experts(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t t = 0; t < profile.n_rounds(); ++t)
      row.push_back(profile.forecasts()(i, t));
    rows.push_back(std::move(row));
  }
  j["forecasts"] = std::move(rows);
  return j.dump(2) + "\n";
}

PredictionProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json")
    return parse_profile_json(buf.str(), path.string());
  return parse_profile_csv(buf.str(), path.string());
}

void save_profile(const PredictionProfile& profile,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for write");
  out << (path.extension() == ".json" ? profile_to_json(profile)
                                      : profile_to_csv(profile));
}

}  // namespace teamsel
