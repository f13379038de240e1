#include "nep/errors.hpp"

namespace nep {

namespace {
std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}
}  // namespace

UnknownName::UnknownName(const std::string& name,
                         const std::vector<std::string>& valid)
    : NepError("unknown name '" + name + "'; valid names: " + join_names(valid)) {}

}  // namespace nep
