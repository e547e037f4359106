#include "cliffkit/curve/divisor.hpp"

#include <sstream>

namespace cliff::curve {

std::string Place::str() const {
  std::ostringstream os;
  switch (kind) {
    case PlaceKind::Finite: os << "finite(" << x << "," << y << ")"; break;
    case PlaceKind::Branch: os << "branch(" << x << ")"; break;
    case PlaceKind::Infinity: os << "inf(" << index << ")"; break;
  }
  return os.str();
}

Divisor Divisor::point(const Place& p, int mult) {
  Divisor d;
  d.add(p, mult);
  return d;
}

Divisor Divisor::sum_of(const std::vector<Place>& places, int mult) {
  Divisor d;
  for (const auto& p : places) d.add(p, mult);
  return d;
}

int Divisor::coefficient(const Place& p) const {
  auto it = c_.find(p);
  return it == c_.end() ? 0 : it->second;
}

void Divisor::add(const Place& p, int mult) {
  if (mult == 0) return;
  int& v = c_[p];
  v += mult;
  if (v == 0) c_.erase(p);
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& [p, m] : c_) d += m;
  return d;
}

bool Divisor::is_effective() const {
  for (const auto& [p, m] : c_)
    if (m < 0) return false;
  return true;
}

std::vector<Place> Divisor::support() const {
  std::vector<Place> out;
  for (const auto& [p, m] : c_) out.push_back(p);
  return out;
}

Divisor Divisor::positive_part() const {
  Divisor d;
  for (const auto& [p, m] : c_)
    if (m > 0) d.add(p, m);
  return d;
}

Divisor Divisor::negative_part() const {
  Divisor d;
  for (const auto& [p, m] : c_)
    if (m < 0) d.add(p, -m);
  return d;
}

bool Divisor::disjoint_from(const Divisor& o) const {
  for (const auto& [p, m] : c_)
    if (o.c_.count(p)) return false;
  return true;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor d = *this;
  for (const auto& [p, m] : o.c_) d.add(p, m);
  return d;
}

Divisor Divisor::operator-(const Divisor& o) const {
  Divisor d = *this;
  for (const auto& [p, m] : o.c_) d.add(p, -m);
  return d;
}

Divisor Divisor::operator*(int k) const {
  Divisor d;
  if (k == 0) return d;
  for (const auto& [p, m] : c_) d.add(p, m * k);
  return d;
}

std::string Divisor::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, m] : c_) {
    if (!first) os << " + ";
    first = false;
    if (m != 1) os << m << "*";
    os << p.str();
  }
  return os.str();
}

}  // namespace cliff::curve
