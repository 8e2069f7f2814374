#pragma once

#include <string_view>

namespace depclust {

/// Writes "depclust: warning: <message>" to stderr unless warnings are muted.
void log_warning(std::string_view message);

/// Mutes or unmutes library warnings process-wide.
void set_warnings_muted(bool muted);

}  // namespace depclust
