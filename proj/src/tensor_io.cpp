#include "tensorspec/tensor_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace tensorspec::io {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool is_skippable(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens.front().starts_with('#');
}

int parse_int(std::string_view tok, int line, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line);
  }
  return v;
}

double parse_double(std::string_view tok, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid value '" + std::string(tok) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("value is not finite", line);
  return v;
}

TensorKind parse_kind(std::string_view tok, int line) {
  if (tok == "symmetric") return TensorKind::Symmetric;
  if (tok == "general") return TensorKind::General;
  if (tok == "stochastic") return TensorKind::Stochastic;
  throw ParseError("unknown tensor kind '" + std::string(tok) + "'", line);
}

}  // namespace

ParseError::ParseError(std::string message, int line)
    : ValidationError({line > 0 ? "line " + std::to_string(line) + ": " + message
                                : message}),
      line_(line) {}

std::string_view to_string(TensorKind k) {
  switch (k) {
    case TensorKind::Symmetric: return "symmetric";
    case TensorKind::General: return "general";
    case TensorKind::Stochastic: return "stochastic";
  }
  return "general";
}

SymTensor TensorFile::symmetric() const {
  if (kind != TensorKind::Symmetric) return symmetrize(general());
  SymTensor::Builder b(order, dim);
  for (const auto& [idx, v] : entries) b.set(idx, v);
  return b.build();
}

GenTensor TensorFile::general() const {
  if (kind == TensorKind::Symmetric) return to_general(symmetric());
  GenTensor::Builder b(order, dim);
  for (const auto& [idx, v] : entries) b.set(idx, v);
  return b.build();
}

TransitionTensor TensorFile::stochastic() const { return validate_transition(general()); }

TensorFile parse_tensor(std::istream& in) {
  TensorFile file;
  bool have_header = false;
  std::map<MultiIndex, std::pair<double, int>> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(raw);
    if (is_skippable(tokens)) continue;
    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "tensor") {
        throw ParseError("expected header 'tensor <m> <n> <kind>'", line);
      }
      file.order = parse_int(tokens[1], line, "order");
      file.dim = parse_int(tokens[2], line, "dimension");
      file.kind = parse_kind(tokens[3], line);
      if (file.order < 1 || file.dim < 1) {
        throw ParseError("order and dimension must be positive", line);
      }
      have_header = true;
      continue;
    }
    if (static_cast<int>(tokens.size()) != file.order + 1) {
      throw ParseError("expected " + std::to_string(file.order) +
                           " indices and a value, got " +
                           std::to_string(tokens.size()) + " fields",
                       line);
    }
    MultiIndex idx(file.order);
    for (int k = 0; k < file.order; ++k) {
      const int i = parse_int(tokens[k], line, "index");
      if (i < 1 || i > file.dim) {
        throw ParseError("index " + std::to_string(i) + " outside 1.." +
                             std::to_string(file.dim),
                         line);
      }
      idx[k] = i - 1;
    }
    if (file.kind == TensorKind::Symmetric && !std::ranges::is_sorted(idx)) {
      throw ParseError("symmetric entries need non-decreasing indices", line);
    }
    const double v = parse_double(tokens[file.order], line);
    const auto [it, inserted] = seen.try_emplace(idx, v, line);
    if (!inserted) {
      throw ParseError("duplicate entry (first given on line " +
                           std::to_string(it->second.second) + ")",
                       line);
    }
  }
  if (!have_header) throw ParseError("missing 'tensor <m> <n> <kind>' header", 0);
  for (const auto& [idx, vl] : seen) {
    if (vl.first != 0.0) file.entries.emplace_back(idx, vl.first);
  }
  if (file.kind == TensorKind::Stochastic) (void)file.stochastic();
  return file;
}

TensorFile parse_tensor(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tensor(in);
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TensorFile read_tensor_file(const std::filesystem::path& path) {
  return parse_tensor(std::string_view(read_file_bytes(path)));
}

std::string format_double(double v, int digits) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string write_tensor(const TensorFile& file) {
  std::string out = "tensor " + std::to_string(file.order) + " " +
                    std::to_string(file.dim) + " " +
                    std::string(to_string(file.kind)) + "\n";
  auto entries = file.entries;
  std::ranges::sort(entries, {}, &std::pair<MultiIndex, double>::first);
  for (const auto& [idx, v] : entries) {
    if (v == 0.0) continue;
    for (int i : idx) out += std::to_string(i + 1) + " ";
    out += format_double(v, 17) + "\n";
  }
  return out;
}

TensorFile to_file(const SymTensor& a) {
  TensorFile f;
  f.order = a.order();
  f.dim = a.dim();
  f.kind = TensorKind::Symmetric;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    f.entries.emplace_back(MultiIndex(a.index(k).begin(), a.index(k).end()), a.value(k));
  }
  return f;
}

TensorFile to_file(const GenTensor& a, TensorKind kind) {
  TensorFile f;
  f.order = a.order();
  f.dim = a.dim();
  f.kind = kind;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    f.entries.emplace_back(MultiIndex(a.index(k).begin(), a.index(k).end()), a.value(k));
  }
  return f;
}

Matrix to_matrix(const TensorFile& file) {
  if (file.order != 2) {
    throw ParseError("matrix files need order 2, got " + std::to_string(file.order), 0);
  }
  Matrix p = Matrix::Zero(file.dim, file.dim);
  for (const auto& [idx, v] : file.entries) {
    p(idx[0], idx[1]) = v;
    if (file.kind == TensorKind::Symmetric) p(idx[1], idx[0]) = v;
  }
  return p;
}

std::vector<std::vector<int>> parse_edges(std::istream& in) {
  std::vector<std::vector<int>> edges;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(raw);
    if (is_skippable(tokens)) continue;
    std::vector<int> edge;
    for (auto tok : tokens) edge.push_back(parse_int(tok, line, "vertex") - 1);
    edges.push_back(std::move(edge));
  }
  return edges;
}

}  // namespace tensorspec::io
