// JSON exchange formats and the small spec grammar used by the CLI to name
// states and channels with parameters.
#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "entkit/channels.hpp"
#include "entkit/linalg.hpp"

namespace entkit {

using Json = nlohmann::ordered_json;

/// {"dims": [...], "data": [[re, im], ...]} with data row-major.
Json operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const Json& j);

/// Matrix JSON plus a metadata block carrying in/out dims and bipartition.
Json channel_to_json(const Channel& ch);
Channel channel_from_json(const Json& j);

/// Parsed "name:key=value,key=value" spec; values may be numbers or nested
/// specs written as name(key=value;key=value).
struct ObjectSpec {
  std::string name;
  std::map<std::string, std::string> args;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool has(const std::string& key) const { return args.count(key) > 0; }
};

ObjectSpec parse_object_spec(const std::string& text);

/// Builds a named state (as a density operator) from a spec such as
/// "werner:d=4,beta=1.0" or "ghz:n=3,r=2".
HermitianOperator state_from_spec(const std::string& text);

/// Builds a named construction channel from a spec such as
/// "superactivation" or "kne:d=4,k=2,beta=1.0".
Channel channel_from_spec(const std::string& text);

}  // namespace entkit
