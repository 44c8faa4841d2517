#pragma once

namespace frobkit {

// Full command-line surface.  Exit codes: 0 success, 1 usage error
// (unknown label, malformed model, invalid flags), 2 computation error.
int cli_main(int argc, char** argv);

} // namespace frobkit
