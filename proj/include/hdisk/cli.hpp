#pragma once

namespace hdisk {

/// argv-style entry point of the `hdisk` binary, exposed so the tests can
/// drive the CLI in-process. Exit codes: 0 success, 2 when the computed
/// verdict is divergent-suspect, 1 on configuration or runtime errors.
int cli_main(int argc, const char* const* argv);

} // namespace hdisk
