#pragma once

// JSON encodings of the library types. Complex numbers are [re, im] pairs;
// non-finite doubles are written as null and read back as +inf.

#include <cstddef>
#include <limits>
#include <string>

#include "json.hpp"

#include "innerkit/constructors.hpp"
#include "innerkit/kernel.hpp"
#include "innerkit/space.hpp"
#include "innerkit/verification.hpp"

namespace innerkit {

using json = nlohmann::json;

// Field access with JSON-pointer style paths in error messages
// ("config error at /space/alpha: expected a number").
class ConfigNode {
 public:
  ConfigNode(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& value() const { return *j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const;
  ConfigNode at(const std::string& key) const;
  ConfigNode at(std::size_t index) const;
  std::size_t size() const;  // array length

  double number() const;
  double positive() const;
  long long integer() const;
  std::size_t count() const;  // nonnegative integer
  bool boolean() const;
  std::string string() const;
  cplx complex() const;

  double number_or(const std::string& key, double fallback) const;
  double positive_or(const std::string& key, double fallback) const;
  std::size_t count_or(const std::string& key, std::size_t fallback) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const json* j_;
  std::string path_;
};

// Parses text, reporting syntax errors with line and column.
json parse_json_text(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);

SpaceSpec space_from_json(const ConfigNode& n);
FactoredPoly poly_from_json(const ConfigNode& n);
ReproducibleMultiset multiset_from_json(const ConfigNode& n);
TruncationPolicy policy_from_json(const ConfigNode& n);
TaylorSeries taylor_from_json(const ConfigNode& n);

json json_of(cplx z);
json json_of_real(double x);
json json_of(const SpaceSpec& s);
json json_of(const FactoredPoly& p);
json json_of(const ReproducibleMultiset& Z);
json json_of(const ReproducibleOrder& o);
json json_of(const TruncationPolicy& p);
json json_of(const TaylorSeries& t, std::size_t max_coeffs = std::numeric_limits<std::size_t>::max());
json json_of(const KernelCombo& c);
json json_of(const ConstructionResult& r, std::size_t max_coeffs = std::numeric_limits<std::size_t>::max());
json json_of(const RationalRep& r);
json json_of(const InnerReport& r);
json json_of(const ZeroReport& r);
json json_of(const ComparisonReport& r);
json json_of(const SubspaceResult& r);
json json_of(const ExtremalReport& r);
json json_of(const ScanReport& r);

}  // namespace innerkit
