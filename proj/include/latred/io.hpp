#pragma once

// Basis files and text reports.
//
// A basis file is a JSON object
//
//   {
//     "ambient": 3,
//     "rank": 2,
//     "rows": [
//       [1, 0, 4],
//       [0, 1, -7]
//     ]
//   }
//
// Entries that do not fit in a signed 64-bit integer are written as decimal
// strings ("123456789012345678901234567890"); both forms are accepted on
// input. write_basis always produces the canonical layout above, so a file
// written by this library reads back and re-writes byte for byte.

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latred/core.hpp"
#include "latred/enumeration.hpp"
#include "latred/reduction.hpp"

namespace latred {

namespace detail {

inline std::string integer_to_json(Integer const& v) {
  static Integer const lo(std::numeric_limits<std::int64_t>::min());
  static Integer const hi(std::numeric_limits<std::int64_t>::max());
  if (v >= lo && v <= hi) return v.str();
  return "\"" + v.str() + "\"";
}

inline Integer integer_from_json(nlohmann::json const& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    std::string const s = j.get<std::string>();
    std::size_t const start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw Error(Errc::parse_error, "not a decimal integer: \"" + s + "\"");
    }
    return Integer(s);
  }
  throw Error(Errc::parse_error, "basis entries must be integers, got " + j.dump());
}

}  // namespace detail

inline std::string basis_to_string(Basis const& basis) {
  std::ostringstream os;
  os << "{\n  \"ambient\": " << basis.ambient_dim() << ",\n  \"rank\": " << basis.rank()
     << ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    os << "    [";
    for (std::size_t j = 0; j < basis.ambient_dim(); ++j) {
      if (j > 0) os << ", ";
      os << detail::integer_to_json(basis.row(i)[j]);
    }
    os << "]" << (i + 1 < basis.rank() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

inline Basis basis_from_string(std::string const& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw Error(Errc::parse_error, e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw Error(Errc::parse_error, "expected an object with a \"rows\" array");
  }
  IntMatrix rows;
  for (auto const& row : doc["rows"]) {
    if (!row.is_array()) throw Error(Errc::parse_error, "each row must be an array");
    IntVector r;
    for (auto const& entry : row) r.push_back(detail::integer_from_json(entry));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw Error(Errc::parse_error, "no rows");
  auto check_field = [&](char const* key, std::size_t expected) {
    if (!doc.contains(key)) throw Error(Errc::parse_error, std::string("missing \"") + key + "\"");
    if (!doc[key].is_number_unsigned() || doc[key].get<std::uint64_t>() != expected) {
      throw Error(Errc::parse_error, std::string("\"") + key + "\" does not match the rows");
    }
  };
  check_field("rank", rows.size());
  check_field("ambient", rows.front().size());
  return Basis(std::move(rows));
}

inline Basis read_basis(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return basis_from_string(buf.str());
}

inline void write_text(std::string const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::parse_error, "write failed for " + path);
}

inline void write_basis(std::string const& path, Basis const& basis) {
  write_text(path, basis_to_string(basis));
}

// ---------------------------------------------------------------------------
// Text reports.

inline std::string rational_to_string(Rational const& q) { return q.str(); }

inline std::string join(IntVector const& v, char const* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += v[i].str();
  }
  return out;
}

inline std::string join(std::vector<std::size_t> const& v, char const* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

inline void write_matrix(std::ostream& os, char const* name, IntMatrix const& m) {
  os << name << ":\n";
  for (auto const& row : m) os << "  [" << join(row, ", ") << "]\n";
}

inline std::string certificate_to_string(MinimaCertificate const& cert) {
  std::ostringstream os;
  os << "lambda_sq: " << join(cert.lambda_sq) << "\n";
  write_matrix(os, "minima_vectors", cert.vectors);
  write_matrix(os, "minima_coeffs", cert.coeffs);
  return os.str();
}

inline char const* flag(bool b) { return b ? "true" : "false"; }

inline std::string report_to_string(ReductionReport const& r) {
  std::ostringstream os;
  os << "method: " << to_string(r.method) << "\n"
     << "rank: " << r.output_basis.rank() << "\n"
     << "ambient: " << r.output_basis.ambient_dim() << "\n"
     << "defect_before: " << rational_to_string(r.defect_before) << "\n"
     << "defect_after: " << rational_to_string(r.defect_after) << "\n"
     << "k_profile: " << join(r.k_profile) << "\n"
     << "property1_ok: " << flag(r.property1_ok) << "\n"
     << "property2_ok: " << flag(r.property2_ok) << "\n"
     << "theorem1_ok: " << flag(r.theorem1_ok) << "\n"
     << "leading_minima_ok: " << flag(r.leading_minima_ok) << "\n"
     << "short_projection_ok: " << flag(r.short_projection_ok) << "\n";
  os << certificate_to_string(r.minima);
  write_matrix(os, "transform", r.transform.entries());
  write_matrix(os, "input_basis", r.input_basis.rows());
  write_matrix(os, "output_basis", r.output_basis.rows());
  return os.str();
}

}  // namespace latred
