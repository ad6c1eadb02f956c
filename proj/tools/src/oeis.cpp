#include "dlab/oeis.hpp"

#include <cstdio>

#include <json.hpp>

#ifdef DLAB_ENABLE_NETWORK
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#endif

namespace dlab::oeis {

namespace {

std::string snippet(const std::string& body) {
  constexpr std::size_t limit = 120;
  return body.size() <= limit ? body : body.substr(0, limit) + "...";
}

std::string format_id(long long number) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "A%06lld", number);
  return buf;
}

}  // namespace

bool OeisQueryResult::contains(const std::string& id) const {
  for (const auto& m : matches)
    if (m.id == id) return true;
  return false;
}

std::string query_target(std::span<const exact::BigInt> terms) {
  std::string target = "/search?q=";
  for (std::size_t k = 0; k < terms.size(); ++k) target += (k ? "," : "") + terms[k].get_str();
  return target + "&fmt=json";
}

OeisQueryResult parse_response(std::span<const exact::BigInt> terms, const std::string& body) {
  OeisQueryResult result;
  result.terms.assign(terms.begin(), terms.end());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    throw OeisError("malformed OEIS response: " + snippet(body));
  }
  const nlohmann::json* results = nullptr;
  if (doc.is_array()) {
    results = &doc;
  } else if (doc.is_object()) {
    if (auto it = doc.find("results"); it != doc.end() && it->is_array()) results = &*it;
    else if (it == doc.end() || !it->is_null())
      throw OeisError("OEIS response has no results list: " + snippet(body));
  } else if (!doc.is_null()) {
    throw OeisError("unexpected OEIS response: " + snippet(body));
  }
  if (!results) return result;
  for (const auto& entry : *results) {
    if (!entry.is_object() || !entry.contains("number") || !entry["number"].is_number_integer())
      throw OeisError("OEIS result without a sequence number: " + snippet(body));
    OeisMatch match;
    match.id = format_id(entry["number"].get<long long>());
    if (auto it = entry.find("name"); it != entry.end() && it->is_string()) match.name = it->get<std::string>();
    result.matches.push_back(std::move(match));
  }
  return result;
}

Transport https_transport(int timeout_seconds) {
#ifdef DLAB_ENABLE_NETWORK
  return [timeout_seconds](const std::string& h, const std::string& target) {
    httplib::SSLClient client(h);
    client.set_connection_timeout(timeout_seconds, 0);
    client.set_read_timeout(timeout_seconds, 0);
    client.set_follow_location(true);
    auto response = client.Get(target);
    if (!response) throw OfflineError("cannot reach " + h + ": " + httplib::to_string(response.error()));
    if (response->status != 200)
      throw OeisError("OEIS returned HTTP " + std::to_string(response->status) + ": " + snippet(response->body));
    return response->body;
  };
#else
  (void)timeout_seconds;
  return [](const std::string& h, const std::string&) -> std::string {
    throw OfflineError("built without network support; cannot reach " + h);
  };
#endif
}

OeisQueryResult lookup(std::span<const exact::BigInt> terms, const Transport& transport) {
  if (terms.size() < 3 || terms.size() > 20)
    throw InvalidArgument("OEIS lookup needs 3 to 20 terms, got " + std::to_string(terms.size()));
  return parse_response(terms, transport(host, query_target(terms)));
}

}  // namespace dlab::oeis
