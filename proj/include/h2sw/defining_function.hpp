#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

namespace h2sw {

struct SpaceSpec;

/// g(x, theta) = <x, theta>.
struct Linear {};

/// g(x, theta) = ||x - r theta||_2.
struct Circular {
  double r = 1.0;
};

/// g(x, theta) = sum_{|alpha| = m} theta_alpha x^alpha, m odd.
struct OddPolynomial {
  int m = 3;
};

/// g(x, theta) = log(-<x, x0 + theta>_L) on the Lorentz model.
struct BusemannLorentz {};

using DefiningFunction = std::variant<Linear, Circular, OddPolynomial, BusemannLorentz>;

/// Checks the family's own invariants (r > 0, m odd and >= 1).
void validate_defining_function(const DefiningFunction& g);

/// Parses "linear", "circular:<r>", "circular" (r = 1), "poly:<m>", "busemann".
DefiningFunction parse_defining_function(std::string_view text);
std::string to_string(const DefiningFunction& g);

/// Length of theta for g acting on `ambient` coordinates.
std::size_t parameter_dim(const DefiningFunction& g, std::size_t ambient);

/// Length of theta for g on a marginal space; throws ConfigError on unsupported pairings.
std::size_t parameter_dim(const DefiningFunction& g, const SpaceSpec& spec);

/// Number of multi-indices alpha in N^vars with |alpha| = degree.
std::size_t monomial_count(std::size_t vars, int degree);

}  // namespace h2sw
