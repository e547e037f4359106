#include "cliffkit/curve/spec_file.hpp"

#include <fstream>
#include <sstream>

namespace cliff::curve {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '=' || ch == '+' || ch == '*') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      out.emplace_back(1, ch);
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int64_t to_int(const std::string& s, const std::string& source, int line) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "expected an integer, got '" + s + "'");
  }
}

size_t arity(const std::string& kind) {
  if (kind == "finite") return 2;
  if (kind == "branch" || kind == "infinity" || kind == "fiber") return 1;
  if (kind == "canonical") return 0;
  return SIZE_MAX;
}

DivisorDecl parse_divisor(const std::vector<std::string>& tok, const std::string& source, int line) {
  if (tok.size() < 4 || tok[2] != "=") throw ParseError(source, line, "expected 'divisor NAME = terms'");
  DivisorDecl d;
  d.name = tok[1];
  d.line = line;
  size_t i = 3;
  int sign = 1;
  while (i < tok.size()) {
    DivisorTerm t;
    // Leading sign; '-' may be glued to the multiplicity or stand alone.
    if (tok[i] == "-") {
      sign = -1;
      ++i;
    }
    if (i < tok.size() && i + 1 < tok.size() && tok[i + 1] == "*") {
      t.multiplicity = static_cast<int>(to_int(tok[i], source, line));
      i += 2;
    }
    if (i >= tok.size()) throw ParseError(source, line, "dangling divisor term");
    t.kind = tok[i++];
    const size_t k = arity(t.kind);
    if (k == SIZE_MAX) throw ParseError(source, line, "unknown place kind '" + t.kind + "'");
    for (size_t a = 0; a < k; ++a) {
      if (i >= tok.size()) throw ParseError(source, line, "too few arguments for '" + t.kind + "'");
      t.args.push_back(to_int(tok[i++], source, line));
    }
    t.multiplicity *= sign;
    d.terms.push_back(t);
    sign = 1;
    if (i < tok.size()) {
      if (tok[i] == "+") {
        ++i;
      } else if (tok[i] == "-") {
        // handled at the top of the loop
      } else {
        throw ParseError(source, line, "expected '+' or '-' between divisor terms, got '" + tok[i] + "'");
      }
      if (i >= tok.size()) throw ParseError(source, line, "dangling '+'");
    }
  }
  return d;
}

}  // namespace

CurveSpec parse_spec(std::istream& in, const std::string& source) {
  CurveSpec spec;
  spec.source = source;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    // Separate a glued minus sign ("- 2 * fiber 3" and "-2 * ..." both work).
    std::string text;
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '-' && (i + 1 >= raw.size() || !std::isdigit(static_cast<unsigned char>(raw[i + 1])))) {
        text += " - ";
      } else {
        text += raw[i];
      }
    }
    auto tok = tokenize(text);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "name") {
      if (tok.size() != 2) throw ParseError(source, line, "expected 'name <identifier>'");
      spec.name = tok[1];
    } else if (key == "char") {
      if (tok.size() != 2) throw ParseError(source, line, "expected 'char <prime>'");
      const int64_t p = to_int(tok[1], source, line);
      if (p < 2 || p > 2147483647 || !la::is_prime(static_cast<uint64_t>(p)))
        throw ParseError(source, line, "characteristic must be a prime below 2^31");
      spec.characteristic = static_cast<uint32_t>(p);
      spec.char_line = line;
    } else if (key == "n") {
      if (tok.size() != 2) throw ParseError(source, line, "expected 'n <cover degree>'");
      const int64_t n = to_int(tok[1], source, line);
      if (n < 2 || n > 64) throw ParseError(source, line, "cover degree must be between 2 and 64");
      spec.n = static_cast<unsigned>(n);
      spec.n_line = line;
    } else if (key == "f") {
      if (tok.size() < 3) throw ParseError(source, line, "f needs at least two coefficients");
      spec.f.clear();
      for (size_t i = 1; i < tok.size(); ++i) spec.f.push_back(to_int(tok[i], source, line));
      spec.f_line = line;
    } else if (key == "divisor") {
      auto d = parse_divisor(tok, source, line);
      for (const auto& prev : spec.divisors)
        if (prev.name == d.name) throw ParseError(source, line, "divisor '" + d.name + "' defined twice");
      spec.divisors.push_back(std::move(d));
    } else if (key == "layer") {
      TowerLayer l;
      if (tok.size() < 7 || tok[1] != "degree" || tok[3] != "branch" || tok[5] != "twists")
        throw ParseError(source, line, "expected 'layer degree <d> branch <b> twists <a...>'");
      l.degree = static_cast<int>(to_int(tok[2], source, line));
      l.branch_points = static_cast<int>(to_int(tok[4], source, line));
      for (size_t i = 6; i < tok.size(); ++i) l.twists.push_back(static_cast<int>(to_int(tok[i], source, line)));
      if (l.degree < 1 || static_cast<int>(l.twists.size()) != l.degree)
        throw ParseError(source, line, "layer needs one twist per sheet");
      if (l.twists.front() != 0) throw ParseError(source, line, "first twist must be 0");
      spec.layers.push_back(std::move(l));
    } else {
      throw ParseError(source, line, "unknown statement '" + key + "'");
    }
  }
  if (spec.has_curve()) {
    if (spec.n == 0) throw ParseError(source, line, "curve file has 'f' but no 'n'");
    if (spec.f.empty()) throw ParseError(source, line, "curve file has 'n' but no 'f'");
  }
  return spec;
}

CurveSpec parse_spec_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_spec(in, source);
}

CurveSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_spec(in, path);
}

Curve build_curve(const CurveSpec& spec, std::optional<uint32_t> prime_override) {
  if (!spec.has_curve()) throw ParseError(spec.source, 0, "file describes no curve");
  const uint32_t p = prime_override ? *prime_override : (spec.characteristic ? spec.characteristic : 32003u);
  try {
    return Curve::create(spec.n, spec.f, p);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(spec.source, spec.f_line, e.what());
  }
}

std::map<std::string, Divisor> build_divisors(const CurveSpec& spec, const Curve& C) {
  std::map<std::string, Divisor> out;
  const uint32_t p = C.p();
  auto residue = [&](int64_t v) { return Fp(v, p); };
  for (const auto& d : spec.divisors) {
    Divisor D;
    for (const auto& t : d.terms) {
      try {
        if (t.kind == "finite") {
          const Place P = Place::finite(residue(t.args[0]).value(), residue(t.args[1]).value());
          C.require_place(P);
          D.add(P, t.multiplicity);
        } else if (t.kind == "branch") {
          const Place P = Place::branch(residue(t.args[0]).value());
          C.require_place(P);
          D.add(P, t.multiplicity);
        } else if (t.kind == "infinity") {
          if (t.args[0] < 0) throw PreconditionError("negative infinity index");
          const Place P = Place::infinity(static_cast<uint32_t>(t.args[0]));
          C.require_place(P);
          D.add(P, t.multiplicity);
        } else if (t.kind == "fiber") {
          D = D + C.fiber_divisor(residue(t.args[0])) * t.multiplicity;
        } else if (t.kind == "canonical") {
          D = D + C.canonical_divisor() * t.multiplicity;
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(spec.source, d.line, "divisor '" + d.name + "': " + e.what());
      }
    }
    out[d.name] = D;
  }
  return out;
}

PushforwardTower build_tower(const CurveSpec& spec) {
  if (spec.layers.empty()) throw ParseError(spec.source, 0, "file has no tower layers");
  return PushforwardTower(spec.layers);
}

}  // namespace cliff::curve
