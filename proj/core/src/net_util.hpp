#pragma once

#include <string>

namespace logicl {

// Split a URL into the scheme://host[:port] base accepted by the HTTP client
// and the remaining path. Throws Errc::config_error on a scheme-less URL.
void split_url(const std::string& url, std::string& base, std::string& path);

// Read a non-empty API key from the named environment variable; keys never
// travel through flags or config files. Throws Errc::config_error when unset.
std::string read_api_key(const std::string& env_name);

bool transient_http_status(int status);

}  // namespace logicl
