#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace rdm {

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> process_env(const std::string& name);

// Entry point of the `rdm` tool. Returns 0 on success, 1 when the operation
// fails and 2 for usage errors. RDM_JOURNAL, RDM_BLOBROOT and RDM_TOKEN
// supply defaults for --journal, --blob-root and --token.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
             const EnvLookup& env = process_env);

}  // namespace rdm
