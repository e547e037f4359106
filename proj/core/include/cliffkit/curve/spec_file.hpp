#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliffkit/curve/curve.hpp"
#include "cliffkit/curve/tower.hpp"

namespace cliff::curve {

// One `[k *] kind args` term of a divisor line.
struct DivisorTerm {
  int multiplicity = 1;
  std::string kind;  // finite, branch, infinity, fiber, canonical
  std::vector<int64_t> args;
};

struct DivisorDecl {
  std::string name;
  int line = 0;
  std::vector<DivisorTerm> terms;
};

// Parsed curve file.  Grammar (one statement per line, `#` starts a comment):
//   name  <identifier>
//   char  <prime>
//   n     <cover degree>
//   f     <c0> <c1> ... <cm>          coefficients low to high
//   divisor <NAME> = <term> (+|-) <term> ...
//       term := [k *] finite x y | branch x | infinity i | fiber x | canonical
//   layer degree <d> branch <b> twists <a0> ... <a_{d-1}>
struct CurveSpec {
  std::string source;
  std::string name;
  uint32_t characteristic = 0;
  unsigned n = 0;
  std::vector<int64_t> f;
  std::vector<DivisorDecl> divisors;
  std::vector<TowerLayer> layers;
  int char_line = 0, n_line = 0, f_line = 0;

  bool has_curve() const { return n != 0 || !f.empty(); }
};

CurveSpec parse_spec(std::istream& in, const std::string& source);
CurveSpec parse_spec_string(const std::string& text, const std::string& source = "<string>");
CurveSpec parse_spec_file(const std::string& path);

// Errors are reported as ParseError at the offending line.
Curve build_curve(const CurveSpec& spec, std::optional<uint32_t> prime_override = std::nullopt);
std::map<std::string, Divisor> build_divisors(const CurveSpec& spec, const Curve& C);
PushforwardTower build_tower(const CurveSpec& spec);

}  // namespace cliff::curve
