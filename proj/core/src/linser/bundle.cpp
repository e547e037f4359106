#include "cliffkit/linser/bundle.hpp"

namespace cliff::linser {

size_t h0(const Curve& C, const LineBundle& L) { return curve::h0(C, L.representative); }

size_t h1(const Curve& C, const LineBundle& L) {
  return curve::h0(C, C.canonical_divisor() - L.representative);
}

bool isomorphic(const Curve& C, const LineBundle& L, const LineBundle& M) {
  return L.degree() == M.degree() && curve::h0(C, L.representative - M.representative) == 1;
}

bool is_canonical(const Curve& C, const LineBundle& L) { return isomorphic(C, L, LineBundle::canonical(C)); }

}  // namespace cliff::linser
