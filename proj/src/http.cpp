#include "mp2d/http.hpp"

#include <cmath>

#include "mp2d/errors.hpp"

namespace mp2d {

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int retry_index) {
    const double scale = std::pow(policy.factor, retry_index - 1);
    const auto ms = static_cast<long long>(
        static_cast<double>(policy.base_delay.count()) * scale);
    return std::chrono::milliseconds(ms);
}

UrlParts parse_base_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("base URL must include a scheme: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    UrlParts parts;
    if (path_start == std::string::npos) {
        parts.origin = url;
    } else {
        parts.origin = url.substr(0, path_start);
        parts.path = url.substr(path_start);
    }
    // A trailing '/' would double up when request paths are appended.
    while (!parts.path.empty() && parts.path.back() == '/') parts.path.pop_back();
    return parts;
}

} // namespace mp2d
