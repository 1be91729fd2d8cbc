#include "net_util.hpp"

#include <cstdlib>

#include "logicl/errors.hpp"

namespace logicl {

void split_url(const std::string& url, std::string& base, std::string& path) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    raise(Errc::config_error, "URL without scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base = url;
    path = "/";
  } else {
    base = url.substr(0, path_start);
    path = url.substr(path_start);
  }
}

std::string read_api_key(const std::string& env_name) {
  if (env_name.empty()) {
    raise(Errc::config_error, "API key environment variable name is empty");
  }
  const char* value = std::getenv(env_name.c_str());
  if (value == nullptr || *value == '\0') {
    raise(Errc::config_error, "environment variable " + env_name + " is not set");
  }
  return value;
}

bool transient_http_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status < 600);
}

}  // namespace logicl
