#include "minplus/extended_real.hpp"

#include <ostream>
#include <sstream>

namespace minplus {

std::string ExtendedReal::str() const {
  switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    default: break;
  }
  std::ostringstream os;
  os << value_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, ExtendedReal x) {
  return os << x.str();
}

}  // namespace minplus
