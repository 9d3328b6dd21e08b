#include "h2sw/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "h2sw/error.hpp"

namespace h2sw::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_ws(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool parse_size(std::string_view s, std::size_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

SpaceSpec parse_spec(std::string_view value, const std::string& file, std::size_t line, std::size_t column) {
  const auto comma = value.find(',');
  if (comma == std::string_view::npos) throw ParseError(file, line, column, "spec must be <kind,dim>");
  const auto kind = trim(value.substr(0, comma));
  std::size_t dim = 0;
  if (!parse_size(trim(value.substr(comma + 1)), dim) || dim == 0) {
    throw ParseError(file, line, column, "spec dimension must be a positive integer");
  }
  if (kind == "euclidean") return SpaceSpec::euclidean(dim);
  if (kind == "sphere") return SpaceSpec::sphere(dim);
  if (kind == "lorentz") return SpaceSpec::lorentz(dim);
  throw ParseError(file, line, column, "unknown space kind '" + std::string(kind) + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& file, std::size_t line, std::size_t column, const std::string& reason)
    : ValidationError(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + reason),
      file_(file), line_(line), column_(column) {}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

JointCloud parse_cloud(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  // header
  do {
    if (!std::getline(in, line)) throw ParseError(source, line_no + 1, 1, "missing H2SW-CLOUD header");
    ++line_no;
  } while (trim(line).empty());

  std::vector<std::pair<std::string_view, std::size_t>> fields;
  {
    std::string_view rest(line);
    std::size_t offset = 0;
    while (true) {
      const auto semi = rest.find(';');
      const auto raw = rest.substr(0, semi);
      const auto lead = raw.find_first_not_of(" \t\r");
      fields.emplace_back(trim(raw), offset + (lead == std::string_view::npos ? 0 : lead) + 1);
      if (semi == std::string_view::npos) break;
      offset += semi + 1;
      rest = rest.substr(semi + 1);
    }
  }
  if (fields.empty() || fields[0].first != "H2SW-CLOUD v1") {
    throw ParseError(source, line_no, 1, "expected header 'H2SW-CLOUD v1; K=<k>; spec_1=<kind,dim>; ...; n=<n>'");
  }
  std::size_t K = 0, n = 0;
  bool have_k = false, have_n = false;
  std::vector<SpaceSpec> specs;
  std::vector<bool> spec_set;
  for (std::size_t f = 1; f < fields.size(); ++f) {
    const auto [text, col] = fields[f];
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, col, "expected key=value");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (key == "K") {
      if (!parse_size(value, K) || K == 0) throw ParseError(source, line_no, col, "K must be a positive integer");
      have_k = true;
      specs.assign(K, SpaceSpec{});
      spec_set.assign(K, false);
    } else if (key == "n") {
      if (!parse_size(value, n) || n == 0) throw ParseError(source, line_no, col, "n must be a positive integer");
      have_n = true;
    } else if (key.starts_with("spec_")) {
      std::size_t idx = 0;
      if (!have_k) throw ParseError(source, line_no, col, "K must precede the spec entries");
      if (!parse_size(key.substr(5), idx) || idx == 0 || idx > K) {
        throw ParseError(source, line_no, col, "spec index out of range 1..K");
      }
      specs[idx - 1] = parse_spec(value, source, line_no, col);
      spec_set[idx - 1] = true;
    } else {
      throw ParseError(source, line_no, col, "unknown header key '" + std::string(key) + "'");
    }
  }
  if (!have_k) throw ParseError(source, line_no, 1, "header is missing K");
  if (!have_n) throw ParseError(source, line_no, 1, "header is missing n");
  for (std::size_t k = 0; k < K; ++k) {
    if (!spec_set[k]) throw ParseError(source, line_no, 1, "header is missing spec_" + std::to_string(k + 1));
  }

  std::size_t width = 0;
  for (const auto& s : specs) width += s.ambient();
  std::vector<Matrix> blocks;
  for (const auto& s : specs) blocks.emplace_back(n, s.ambient());
  std::vector<double> weights;
  bool weighted = false;

  std::size_t row = 0;
  while (row < n) {
    if (!std::getline(in, line)) {
      throw ParseError(source, line_no + 1, 1, "expected " + std::to_string(n) + " data rows, found " +
                                                   std::to_string(row));
    }
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (row == 0) weighted = tokens.size() == width + 1;
    const std::size_t expected = width + (weighted ? 1 : 0);
    if (tokens.size() != expected) {
      throw ParseError(source, line_no, tokens.size() > expected ? tokens[expected].column : line.size() + 1,
                       "expected " + std::to_string(expected) + " values, found " + std::to_string(tokens.size()));
    }
    std::vector<double> values(tokens.size());
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      const auto& tok = tokens[t];
      const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), values[t]);
      if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
        throw ParseError(source, line_no, tok.column, "'" + std::string(tok.text) + "' is not a number");
      }
    }
    std::size_t off = 0;
    for (std::size_t k = 0; k < K; ++k) {
      auto dst = blocks[k].row(row);
      std::copy(values.begin() + static_cast<std::ptrdiff_t>(off),
                values.begin() + static_cast<std::ptrdiff_t>(off + dst.size()), dst.begin());
      try {
        validate_point(specs[k], dst);
      } catch (const ValidationError& e) {
        throw ParseError(source, line_no, tokens[off].column, e.what());
      }
      off += dst.size();
    }
    if (weighted) weights.push_back(values.back());
    ++row;
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) throw ParseError(source, line_no, 1, "unexpected data after " + std::to_string(n) + " rows");
  }
  try {
    if (!weighted) return JointCloud::uniform(std::move(blocks), std::move(specs));
    return JointCloud(std::move(blocks), std::move(specs), std::move(weights));
  } catch (const ValidationError& e) {
    throw ParseError(source, line_no, 1, e.what());
  }
}

JointCloud read_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cloud file '" + path.string() + "'");
  return parse_cloud(in, path.string());
}

void write_cloud(std::ostream& out, const JointCloud& cloud) {
  out << "H2SW-CLOUD v1; K=" << cloud.num_blocks();
  for (std::size_t k = 0; k < cloud.num_blocks(); ++k) out << "; spec_" << k + 1 << "=" << to_string(cloud.specs()[k]);
  out << "; n=" << cloud.size() << "\n";
  const bool weighted = !cloud.has_uniform_weights();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    bool first = true;
    for (const auto& b : cloud.blocks()) {
      for (double v : b.row(i)) {
        out << (first ? "" : " ") << format_number(v);
        first = false;
      }
    }
    if (weighted) out << " " << format_number(cloud.weights()[i]);
    out << "\n";
  }
}

void write_cloud(const std::filesystem::path& path, const JointCloud& cloud) {
  auto out = open_out(path);
  write_cloud(out, cloud);
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& names, const Matrix& m) {
  auto out = open_out(path);
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << "\n";
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out << (j ? "," : "") << format_number(m(i, j));
    out << "\n";
  }
}

void write_trace_csv(const std::filesystem::path& path, const FlowTrace& trace) {
  auto out = open_out(path);
  out << "step,exact_w,loss\n";
  for (const auto& cp : trace.checkpoints) {
    out << cp.step << "," << format_number(cp.joint_w) << "," << format_number(cp.loss) << "\n";
  }
}

std::vector<std::pair<std::string, std::filesystem::path>> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest '" + path.string() + "'");
  std::vector<std::pair<std::string, std::filesystem::path>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const auto tokens = split_ws(std::string_view(line).substr(0, hash));
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError(path.string(), line_no, tokens.front().column, "expected '<name> <cloud path>'");
    }
    std::filesystem::path cloud(std::string(tokens[1].text));
    if (cloud.is_relative()) cloud = path.parent_path() / cloud;
    entries.emplace_back(std::string(tokens[0].text), cloud);
  }
  if (entries.empty()) throw ParseError(path.string(), line_no + 1, 1, "manifest lists no datasets");
  return entries;
}

}  // namespace h2sw::io
