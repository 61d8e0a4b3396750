#include "qobjsim/model/channel.hpp"

#include <cctype>

namespace qobjsim::model {

std::string Channel::str() const {
  char prefix = kind == Kind::Drive ? 'd' : kind == Kind::Measure ? 'm' : 'u';
  return prefix + std::to_string(index);
}

std::optional<Channel> Channel::parse(const std::string& id) {
  if (id.size() < 2) return std::nullopt;
  Kind kind;
  switch (id[0]) {
    case 'd': kind = Kind::Drive; break;
    case 'm': kind = Kind::Measure; break;
    case 'u': kind = Kind::Control; break;
    default: return std::nullopt;
  }
  int index = 0;
  for (size_t i = 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
    index = index * 10 + (id[i] - '0');
  }
  return Channel{kind, index};
}

}  // namespace qobjsim::model
