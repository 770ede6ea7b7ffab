#pragma once

#include <chrono>
#include <string>

namespace mp2d {

/// Shared retry schedule for the remote clients: max_attempts total tries,
/// sleeping base_delay * factor^(i-1) before retry i.
struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds base_delay{500};
    double factor = 2.0;
};

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int retry_index);

/// "scheme://host[:port]/path" split into the origin httplib wants and the
/// path prefix to prepend to each request.
struct UrlParts {
    std::string origin; // scheme://host[:port]
    std::string path;   // leading '/', possibly empty
};

/// Throws ConfigError when the URL has no scheme://authority part.
UrlParts parse_base_url(const std::string& url);

} // namespace mp2d
