#pragma once

// Lookup-only client for the OEIS search endpoint.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dlab/error.hpp"
#include "dlab/exact.hpp"

namespace dlab::oeis {

class OeisError : public Error {
 public:
  using Error::Error;
};

// No network transport compiled in, or the host could not be reached.
class OfflineError : public OeisError {
 public:
  using OeisError::OeisError;
};

struct OeisMatch {
  std::string id;  // "A051009"
  std::string name;

  friend bool operator==(const OeisMatch&, const OeisMatch&) = default;
};

struct OeisQueryResult {
  std::vector<exact::BigInt> terms;
  std::vector<OeisMatch> matches;

  bool contains(const std::string& id) const;
};

inline constexpr const char* host = "oeis.org";

// GET target for the query, e.g. "/search?q=1,2,12&fmt=json".
std::string query_target(std::span<const exact::BigInt> terms);

// Parses both the object form ({"results": [...]}) and the bare array form
// of the JSON response. Throws OeisError with a snippet of the body.
OeisQueryResult parse_response(std::span<const exact::BigInt> terms, const std::string& body);

// Returns the response body for a GET of `target` on `host`.
using Transport = std::function<std::string(const std::string& host, const std::string& target)>;

// HTTPS transport (throws OfflineError when built without network support
// or when the request fails).
Transport https_transport(int timeout_seconds = 10);

// Requires 3 to 20 terms (InvalidArgument otherwise).
OeisQueryResult lookup(std::span<const exact::BigInt> terms, const Transport& transport);

}  // namespace dlab::oeis
