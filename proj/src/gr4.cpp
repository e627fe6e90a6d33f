#include "pps/gr4.hpp"

#include "pps/errors.hpp"

namespace pps {

int RingCtx::trace(RingElem x) const {
  RingElem s = zero();
  for (int i = 0; i < field_.degree(); ++i) {
    s = add(s, x);
    x = frobenius(x);
  }
  return to_z4(s);
}

RingElem RingCtx::from_index(std::uint64_t idx) const {
  if (idx >= size()) throw DomainError("ring index " + std::to_string(idx) + " out of range");
  const int n = field_.degree();
  return {{static_cast<std::uint32_t>(idx >> n)}, {static_cast<std::uint32_t>(idx & (field_.size() - 1))}};
}

std::string RingCtx::format(RingElem x) const {
  return field_.format(x.a) + "+2*" + field_.format(x.b);
}

RingElem RingCtx::parse(std::string_view s) const {
  const auto plus = s.find("+2*");
  if (plus == std::string_view::npos) return {field_.parse_elem(s), {0}};
  return {field_.parse_elem(s.substr(0, plus)), field_.parse_elem(s.substr(plus + 3))};
}

}  // namespace pps
