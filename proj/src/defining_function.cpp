#include "h2sw/defining_function.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "h2sw/error.hpp"
#include "h2sw/geometry.hpp"

namespace h2sw {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_double(std::string_view text, std::string_view what) {
  std::string buf(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(buf, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != buf.size()) {
    throw ConfigError("invalid " + std::string(what) + " '" + buf + "'");
  }
  return value;
}

}  // namespace

void validate_defining_function(const DefiningFunction& g) {
  if (const auto* c = std::get_if<Circular>(&g)) {
    if (!(c->r > 0.0) || !std::isfinite(c->r)) throw ConfigError("circular radius must be positive");
  }
  if (const auto* p = std::get_if<OddPolynomial>(&g)) {
    if (p->m < 1 || p->m % 2 == 0) throw ConfigError("polynomial degree must be odd and >= 1");
  }
}

DefiningFunction parse_defining_function(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  DefiningFunction g;
  if (name == "linear" && arg.empty()) {
    g = Linear{};
  } else if (name == "circular") {
    g = Circular{arg.empty() ? 1.0 : parse_double(arg, "circular radius")};
  } else if (name == "poly") {
    int m = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
    if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size()) {
      throw ConfigError("invalid polynomial degree in '" + std::string(text) + "'");
    }
    g = OddPolynomial{m};
  } else if (name == "busemann" && arg.empty()) {
    g = BusemannLorentz{};
  } else {
    throw ConfigError("unknown defining function '" + std::string(text) +
                      "' (expected linear, circular:<r>, poly:<m>, busemann)");
  }
  validate_defining_function(g);
  return g;
}

std::string to_string(const DefiningFunction& g) {
  return std::visit(Overloaded{
                        [](const Linear&) { return std::string("linear"); },
                        [](const Circular& c) {
                          char buf[64];
                          std::snprintf(buf, sizeof buf, "circular:%.17g", c.r);
                          return std::string(buf);
                        },
                        [](const OddPolynomial& p) { return "poly:" + std::to_string(p.m); },
                        [](const BusemannLorentz&) { return std::string("busemann"); },
                    },
                    g);
}

std::size_t monomial_count(std::size_t vars, int degree) {
  // C(vars + degree - 1, degree)
  std::size_t result = 1;
  for (int i = 1; i <= degree; ++i) {
    result = result * (vars + static_cast<std::size_t>(i) - 1) / static_cast<std::size_t>(i);
  }
  return result;
}

std::size_t parameter_dim(const DefiningFunction& g, std::size_t ambient) {
  return std::visit(Overloaded{
                        [&](const Linear&) { return ambient; },
                        [&](const Circular&) { return ambient; },
                        [&](const OddPolynomial& p) { return monomial_count(ambient, p.m); },
                        [&](const BusemannLorentz&) -> std::size_t {
                          throw ConfigError("busemann defining function requires a Lorentz marginal");
                        },
                    },
                    g);
}

std::size_t parameter_dim(const DefiningFunction& g, const SpaceSpec& spec) {
  if (std::holds_alternative<BusemannLorentz>(g)) {
    if (spec.kind != SpaceKind::Lorentz) {
      throw ConfigError("busemann defining function requires a Lorentz marginal, got " + to_string(spec));
    }
    return spec.ambient();
  }
  return parameter_dim(g, spec.ambient());
}

}  // namespace h2sw
