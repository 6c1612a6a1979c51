#include "triad/diff_engine.hpp"

#include <stdexcept>
#include <string>

namespace triad {

std::string_view to_string(DiffMode mode) {
  return mode == DiffMode::forward ? "ad" : "fd";
}

DiffMode parse_diff_mode(std::string_view text) {
  if (text == "ad" || text == "forward") return DiffMode::forward;
  if (text == "fd" || text == "central-difference") return DiffMode::central_difference;
  throw std::invalid_argument("unknown differentiation mode '" + std::string(text) + "' (expected ad|fd)");
}

}  // namespace triad
