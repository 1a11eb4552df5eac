#include "psc/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "psc/rand_frames.hpp"
#include "psc/rng.hpp"

namespace psc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_real(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

long parse_positive(std::string_view s, const std::string& what) {
  long value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || value <= 0)
    throw GeneratorError("invalid " + what + " '" + std::string(s) + "'");
  return value;
}

std::uint64_t parse_seed(std::string_view s) {
  std::uint64_t value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) throw GeneratorError("invalid seed '" + std::string(s) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Complex parse_complex(std::string_view token) {
  const std::string_view t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty complex number");
  const char last = t.back();
  if (last != 'j' && last != 'i' && last != 'J' && last != 'I') {
    double re;
    if (!parse_real(t, re)) throw std::invalid_argument("bad number '" + std::string(t) + "'");
    return {re, 0.0};
  }
  const std::string_view body = t.substr(0, t.size() - 1);
  // The sign that separates the parts is the last one not opening an exponent.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  std::string_view imag = body;
  if (split_at != std::string_view::npos) {
    if (!parse_real(body.substr(0, split_at), re))
      throw std::invalid_argument("bad number '" + std::string(t) + "'");
    imag = body.substr(split_at);
  }
  if (imag == "" || imag == "+") {
    im = 1.0;
  } else if (imag == "-") {
    im = -1.0;
  } else if (!parse_real(imag, im)) {
    throw std::invalid_argument("bad number '" + std::string(t) + "'");
  }
  return {re, im};
}

bool is_generator(std::string_view source) {
  for (std::string_view prefix : {"jordan:", "ginibre:", "diag:", "haar-unitary:"})
    if (source.starts_with(prefix)) return true;
  return false;
}

CMatrix generate_matrix(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw GeneratorError("generator needs a ':'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  if (kind == "jordan") {
    const long n = parse_positive(args, "size");
    CMatrix j = CMatrix::Zero(n, n);
    for (long i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
    return j;
  }
  if (kind == "diag") {
    const auto parts = split(args, ',');
    CMatrix d = CMatrix::Zero(Index(parts.size()), Index(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      try {
        d(Index(i), Index(i)) = parse_complex(parts[i]);
      } catch (const std::invalid_argument& e) {
        throw GeneratorError(std::string("diag: ") + e.what());
      }
    }
    return d;
  }
  if (kind == "ginibre" || kind == "haar-unitary") {
    const auto parts = split(args, ':');
    if (parts.size() != 2) throw GeneratorError(std::string(kind) + " takes n:seed");
    const long n = parse_positive(parts[0], "size");
    RngStream rng(parse_seed(parts[1]), kind == "ginibre" ? 0x67696e69 : 0x68616172);
    if (kind == "ginibre") return sample_ginibre(n, rng, 1.0 / std::sqrt(double(n)));
    return sample_haar_unitary(n, rng);
  }
  throw GeneratorError("unknown generator '" + std::string(kind) + "'");
}

CMatrix parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line number
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < upto; ++i) line += text[i] == '\n';
    throw MatrixParseError("invalid JSON", line);
  }
  try {
    const long rows = doc.at("nrows").get<long>(), cols = doc.at("ncols").get<long>();
    if (rows <= 0 || cols <= 0) throw MatrixParseError("nrows and ncols must be positive", 0);
    const auto& entries = doc.at("entries");
    if (!entries.is_array() || entries.size() != std::size_t(rows * cols))
      throw MatrixParseError("entries must hold nrows*ncols pairs", 0);
    CMatrix m(rows, cols);
    for (long k = 0; k < rows * cols; ++k) {
      const auto& e = entries[std::size_t(k)];
      if (!e.is_array() || e.size() != 2)
        throw MatrixParseError("entry " + std::to_string(k) + " is not [re, im]", 0);
      m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw MatrixParseError(std::string("malformed matrix object: ") + e.what(), 0);
  }
}

std::string matrix_to_json(const CMatrix& m) {
  std::ostringstream out;
  out << "{\"nrows\": " << m.rows() << ", \"ncols\": " << m.cols() << ", \"entries\": [";
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (i || j) out << ", ";
      out << '[' << format_real(m(i, j).real()) << ", " << format_real(m(i, j).imag()) << ']';
    }
  out << "]}\n";
  return out.str();
}

CMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<Complex>> rows;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<Complex> row;
    for (std::string_view token : split(line, ',')) {
      token = trim(token);
      if (token.size() >= 2 && token.front() == '"' && token.back() == '"')
        token = token.substr(1, token.size() - 2);
      try {
        row.push_back(parse_complex(token));
      } catch (const std::invalid_argument& e) {
        throw MatrixParseError(e.what(), line_no);
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw MatrixParseError("expected " + std::to_string(rows.front().size()) + " columns, found " +
                                 std::to_string(row.size()),
                             line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw MatrixParseError("no matrix rows", 0);
  CMatrix m(Index(rows.size()), Index(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(Index(i), Index(j)) = rows[i][j];
  return m;
}

std::string matrix_to_csv(const CMatrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      const double im = m(i, j).imag();
      out += format_real(m(i, j).real());
      out += std::signbit(im) ? "" : "+";
      out += format_real(im);
      out += 'j';
    }
    out += '\n';
  }
  return out;
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_matrix_json(text);
  return parse_matrix_csv(text);
}

CMatrix load_matrix(const std::string& source) {
  if (is_generator(source)) return generate_matrix(source);
  // "name:args" that is not a file on disk is a misspelled generator.
  const auto colon = source.find(':');
  if (colon != std::string::npos && colon > 0 && source.find_first_of("/\\.") > colon &&
      !std::filesystem::exists(source))
    return generate_matrix(source);
  return read_matrix_file(source);
}

}  // namespace psc
