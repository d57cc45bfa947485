#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tensorspec/errors.hpp"
#include "tensorspec/markov.hpp"
#include "tensorspec/tensor.hpp"

namespace tensorspec::io {

enum class TensorKind { Symmetric, General, Stochastic };

std::string_view to_string(TensorKind k);

/// Malformed input file; `line` is 1-based (0 when not tied to a line).
class ParseError : public ValidationError {
 public:
  ParseError(std::string message, int line);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Contents of a `.tns` file. Entries hold 0-based indices, sorted, with
/// zeros removed.
struct TensorFile {
  int order = 0;
  int dim = 0;
  TensorKind kind = TensorKind::General;
  std::vector<std::pair<MultiIndex, double>> entries;

  SymTensor symmetric() const;
  GenTensor general() const;
  TransitionTensor stochastic() const;
};

/// Reads the text format:
///
///   # comment
///   tensor <m> <n> <symmetric|general|stochastic>
///   <i1> ... <im> <value>
///
/// Indices are 1-based, unlisted entries are zero. Symmetric files need
/// non-decreasing indices per line; stochastic files must pass
/// validate_transition.
TensorFile parse_tensor(std::istream& in);
TensorFile parse_tensor(std::string_view text);
TensorFile read_tensor_file(const std::filesystem::path& path);

/// Canonical form: header, then entries in lexicographic order with values
/// printed to 17 significant digits.
std::string write_tensor(const TensorFile& file);

TensorFile to_file(const SymTensor& a);
TensorFile to_file(const GenTensor& a, TensorKind kind = TensorKind::General);

/// Square matrix from an order-2 tensor file (any kind).
Matrix to_matrix(const TensorFile& file);

/// One edge per line, whitespace-separated 1-based vertices; `#` comments.
/// Returns 0-based edges.
std::vector<std::vector<int>> parse_edges(std::istream& in);

/// printf-style %.<digits>g.
std::string format_double(double v, int digits);

std::string read_file_bytes(const std::filesystem::path& path);

}  // namespace tensorspec::io
