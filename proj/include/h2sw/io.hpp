#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "h2sw/error.hpp"
#include "h2sw/flow.hpp"
#include "h2sw/geometry.hpp"

namespace h2sw::io {

/// Malformed input file. what() reads "<file>:<line>:<column>: <reason>".
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& file, std::size_t line, std::size_t column, const std::string& reason);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

/// Cloud text format:
///   H2SW-CLOUD v1; K=<k>; spec_1=<kind,dim>; ...; spec_K=<kind,dim>; n=<n>
/// followed by n rows of whitespace-separated reals: block 1 coordinates,
/// block 2 coordinates, ..., and an optional trailing weight (all rows or none).
JointCloud parse_cloud(std::istream& in, const std::string& source = "<stream>");
JointCloud read_cloud(const std::filesystem::path& path);

void write_cloud(std::ostream& out, const JointCloud& cloud);
void write_cloud(const std::filesystem::path& path, const JointCloud& cloud);

/// Header row of names, then one row of values per dataset.
void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& names, const Matrix& m);

/// Columns step,exact_w,loss.
void write_trace_csv(const std::filesystem::path& path, const FlowTrace& trace);

/// Manifest lines: "<name> <cloud path>"; '#' starts a comment. Relative
/// paths resolve against the manifest's directory.
std::vector<std::pair<std::string, std::filesystem::path>> read_manifest(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

}  // namespace h2sw::io
