#include "wsne/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wsne {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw IoError("invalid JSON");
  }
  return doc;
}

double number_at(const json& node, const char* what) {
  if (!node.is_number()) {
    throw IoError(std::string(what) + ": expected a number");
  }
  const double v = node.get<double>();
  if (!std::isfinite(v)) {
    throw IoError(std::string(what) + ": non-finite value");
  }
  return v;
}

Matrix matrix_at(const json& doc, const char* key, Index rows, Index cols) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw IoError(std::string("missing matrix field: ") + key);
  }
  const json& arr = doc[key];
  if (static_cast<Index>(arr.size()) != rows) {
    throw IoError(std::string(key) + ": row count does not match \"rows\"");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = arr[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw IoError(std::string(key) + ": column count does not match \"cols\"");
    }
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = number_at(row[static_cast<std::size_t>(j)], key);
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json arr = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    arr.push_back(std::move(row));
  }
  return arr;
}

Vector vector_at(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
    throw IoError(std::string("missing or empty array field: ") + key);
  }
  const json& arr = doc[key];
  Vector v(static_cast<Index>(arr.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v[i] = number_at(arr[static_cast<std::size_t>(i)], key);
  }
  return v;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    arr.push_back(v[i]);
  }
  return arr;
}

}  // namespace

LoadedGame parse_game(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) {
    throw IoError("game file: expected a JSON object");
  }
  if (!doc.contains("rows") || !doc["rows"].is_number_integer() ||
      !doc.contains("cols") || !doc["cols"].is_number_integer()) {
    throw IoError("game file: \"rows\" and \"cols\" must be integers");
  }
  const auto rows = doc["rows"].get<std::int64_t>();
  const auto cols = doc["cols"].get<std::int64_t>();
  if (rows < 1 || cols < 1 || rows > 100000 || cols > 100000) {
    throw IoError("game file: dimensions out of range");
  }
  Matrix raw_r = matrix_at(doc, "R", static_cast<Index>(rows), static_cast<Index>(cols));
  Matrix raw_c = matrix_at(doc, "C", static_cast<Index>(rows), static_cast<Index>(cols));

  const bool in_unit_box = raw_r.minCoeff() >= 0.0 && raw_r.maxCoeff() <= 1.0 &&
                           raw_c.minCoeff() >= 0.0 && raw_c.maxCoeff() <= 1.0;
  if (in_unit_box) {
    return {BimatrixGame(std::move(raw_r), std::move(raw_c)), std::nullopt};
  }
  NormalizedGame normalized = normalize(raw_r, raw_c);
  return {std::move(normalized.game), normalized.record};
}

LoadedGame load_game(const std::string& path) {
  try {
    return parse_game(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string game_to_json(const BimatrixGame& game) {
  json doc;
  doc["rows"] = game.rows();
  doc["cols"] = game.cols();
  doc["R"] = matrix_to_json(game.R());
  doc["C"] = matrix_to_json(game.C());
  return doc.dump(2) + "\n";
}

void save_game(const std::string& path, const BimatrixGame& game) {
  write_file(path, game_to_json(game));
}

StrategyProfile parse_profile(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) {
    throw IoError("profile file: expected a JSON object");
  }
  try {
    return {MixedStrategy(vector_at(doc, "x")), MixedStrategy(vector_at(doc, "y"))};
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("profile file: ") + e.what());
  }
}

StrategyProfile load_profile(const std::string& path) {
  try {
    return parse_profile(read_file(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string profile_to_json(const StrategyProfile& profile) {
  json doc;
  doc["x"] = vector_to_json(profile.row.probs);
  doc["y"] = vector_to_json(profile.col.probs);
  return doc.dump(2) + "\n";
}

void save_profile(const std::string& path, const StrategyProfile& profile) {
  write_file(path, profile_to_json(profile));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path + ": cannot open for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) {
    throw std::logic_error("format_double: conversion failed");
  }
  return std::string(buf, ptr);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  out << content;
  if (!out.flush()) {
    throw IoError(path + ": write failed");
  }
}

}  // namespace wsne
