#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qobjsim {

// Wire documents keep their key order, so diffs against fixtures stay readable.
using Json = nlohmann::ordered_json;

/// Error raised while decoding a wire document. `path` is a JSON pointer
/// into the offending document.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string path, std::string reason)
      : std::runtime_error(path + ": " + reason),
        path_(std::move(path)),
        reason_(std::move(reason)) {}

  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

private:
  std::string path_;
  std::string reason_;
};

struct ParseOptions {
  // Lenient mode keeps unknown fields and records a warning; strict mode
  // rejects them. Backends are allowed to extend most structures, so
  // lenient is the default.
  bool strict = false;
};

/// Collects non-fatal notes emitted while decoding (unknown fields in
/// lenient mode and the like).
struct ParseLog {
  std::vector<std::string> warnings;

  void warn(const std::string& path, const std::string& msg) {
    warnings.push_back(path + ": " + msg);
  }
};

std::complex<double> complex_from_json(const Json& j, const std::string& path);
Json complex_to_json(std::complex<double> z);

/// Field-by-field decoder for one JSON object. Tracks which keys were
/// consumed so leftovers can be preserved (lenient) or rejected (strict).
class Reader {
public:
  Reader(const Json& j, std::string path, const ParseOptions& opts, ParseLog* log);

  const std::string& path() const { return path_; }
  const Json& raw() const { return *j_; }
  std::string member_path(const std::string& key) const { return path_ + "/" + key; }

  bool has(const std::string& key) const;

  const Json& require(const std::string& key);
  const Json* optional(const std::string& key);

  std::string require_string(const std::string& key);
  bool require_bool(const std::string& key);
  long long require_int(const std::string& key);
  double require_double(const std::string& key);

  std::optional<std::string> optional_string(const std::string& key);
  std::optional<bool> optional_bool(const std::string& key);
  std::optional<long long> optional_int(const std::string& key);
  std::optional<double> optional_double(const std::string& key);

  std::vector<long long> require_int_list(const std::string& key);
  std::optional<std::vector<long long>> optional_int_list(const std::string& key);
  std::vector<double> require_double_list(const std::string& key);
  std::vector<std::string> require_string_list(const std::string& key);
  std::optional<std::vector<std::string>> optional_string_list(const std::string& key);

  /// Opaque pass-through object (headers). Consumed verbatim.
  Json require_object(const std::string& key);
  std::optional<Json> optional_object(const std::string& key);

  [[noreturn]] void fail(const std::string& key, const std::string& reason) const;
  [[noreturn]] void fail_here(const std::string& reason) const;

  /// Call after all known fields were read. Returns the unconsumed fields
  /// (lenient mode); throws in strict mode if any remain.
  Json finish();

private:
  const Json* j_;
  std::string path_;
  ParseOptions opts_;
  ParseLog* log_;
  std::vector<std::string> consumed_;

  void mark(const std::string& key) { consumed_.push_back(key); }
  bool was_consumed(const std::string& key) const;
};

/// Checked element access for arrays with pointer-style paths.
const Json& element(const Json& arr, size_t i, const std::string& path);

std::string index_path(const std::string& base, size_t i);

}  // namespace qobjsim
