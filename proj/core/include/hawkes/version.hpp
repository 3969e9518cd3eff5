#pragma once

namespace hawkes {

/// git-describe style version string baked in at configure time.
const char* version_string();

}  // namespace hawkes
