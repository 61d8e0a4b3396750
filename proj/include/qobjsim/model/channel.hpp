#pragma once

#include <optional>
#include <string>

namespace qobjsim::model {

/// Pulse channel id of the form d<k>, m<k> or u<k>.
struct Channel {
  enum class Kind { Drive, Measure, Control };

  Kind kind = Kind::Drive;
  int index = 0;

  std::string str() const;

  static std::optional<Channel> parse(const std::string& id);

  friend bool operator==(const Channel&, const Channel&) = default;
  friend auto operator<=>(const Channel&, const Channel&) = default;
};

}  // namespace qobjsim::model
