#include "qobjsim/common/json.hpp"

#include <algorithm>

namespace qobjsim {

std::complex<double> complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(path, "expected complex value as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(std::complex<double> z) {
  return Json::array({z.real(), z.imag()});
}

Reader::Reader(const Json& j, std::string path, const ParseOptions& opts, ParseLog* log)
    : j_(&j), path_(std::move(path)), opts_(opts), log_(log) {
  if (!j.is_object()) {
    throw ParseError(path_, "expected object");
  }
}

bool Reader::has(const std::string& key) const { return j_->contains(key); }

bool Reader::was_consumed(const std::string& key) const {
  return std::find(consumed_.begin(), consumed_.end(), key) != consumed_.end();
}

const Json& Reader::require(const std::string& key) {
  auto it = j_->find(key);
  if (it == j_->end()) {
    throw ParseError(path_, "missing required field '" + key + "'");
  }
  mark(key);
  return *it;
}

const Json* Reader::optional(const std::string& key) {
  auto it = j_->find(key);
  if (it == j_->end()) return nullptr;
  mark(key);
  return &*it;
}

void Reader::fail(const std::string& key, const std::string& reason) const {
  throw ParseError(member_path(key), reason);
}

void Reader::fail_here(const std::string& reason) const {
  throw ParseError(path_, reason);
}

std::string Reader::require_string(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_string()) fail(key, "expected string");
  return v.get<std::string>();
}

bool Reader::require_bool(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_boolean()) fail(key, "expected boolean");
  return v.get<bool>();
}

long long Reader::require_int(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_number_integer()) fail(key, "expected integer");
  return v.get<long long>();
}

double Reader::require_double(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_number()) fail(key, "expected number");
  return v.get<double>();
}

std::optional<std::string> Reader::optional_string(const std::string& key) {
  const Json* v = optional(key);
  if (!v) return std::nullopt;
  if (!v->is_string()) fail(key, "expected string");
  return v->get<std::string>();
}

std::optional<bool> Reader::optional_bool(const std::string& key) {
  const Json* v = optional(key);
  if (!v) return std::nullopt;
  if (!v->is_boolean()) fail(key, "expected boolean");
  return v->get<bool>();
}

std::optional<long long> Reader::optional_int(const std::string& key) {
  const Json* v = optional(key);
  if (!v) return std::nullopt;
  if (!v->is_number_integer()) fail(key, "expected integer");
  return v->get<long long>();
}

std::optional<double> Reader::optional_double(const std::string& key) {
  const Json* v = optional(key);
  if (!v) return std::nullopt;
  if (!v->is_number()) fail(key, "expected number");
  return v->get<double>();
}

std::vector<long long> Reader::require_int_list(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_array()) fail(key, "expected array of integers");
  std::vector<long long> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw ParseError(index_path(member_path(key), i), "expected integer");
    }
    out.push_back(v[i].get<long long>());
  }
  return out;
}

std::optional<std::vector<long long>> Reader::optional_int_list(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return require_int_list(key);
}

std::vector<double> Reader::require_double_list(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_array()) fail(key, "expected array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ParseError(index_path(member_path(key), i), "expected number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<std::string> Reader::require_string_list(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_array()) fail(key, "expected array of strings");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      throw ParseError(index_path(member_path(key), i), "expected string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::optional<std::vector<std::string>> Reader::optional_string_list(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return require_string_list(key);
}

Json Reader::require_object(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_object()) fail(key, "expected object");
  return v;
}

std::optional<Json> Reader::optional_object(const std::string& key) {
  const Json* v = optional(key);
  if (!v) return std::nullopt;
  if (!v->is_object()) fail(key, "expected object");
  return *v;
}

Json Reader::finish() {
  Json extra = Json::object();
  for (auto it = j_->begin(); it != j_->end(); ++it) {
    if (was_consumed(it.key())) continue;
    if (opts_.strict) {
      throw ParseError(member_path(it.key()), "unknown field");
    }
    if (log_) log_->warn(member_path(it.key()), "unknown field preserved");
    extra[it.key()] = it.value();
  }
  return extra;
}

const Json& element(const Json& arr, size_t i, const std::string& path) {
  if (!arr.is_array() || i >= arr.size()) {
    throw ParseError(index_path(path, i), "expected array element");
  }
  return arr[i];
}

std::string index_path(const std::string& base, size_t i) {
  return base + "/" + std::to_string(i);
}

}  // namespace qobjsim
