#ifndef TZ_CLI_HPP
#define TZ_CLI_HPP
//
// Project : tzsolve
// Module  : cli
//

namespace tz::cli {

/// Exit codes: 0 ok, 2 configuration error, 3 numerical failure, 4 I/O error.
int run(int argc, char** argv);

}  // namespace tz::cli

#endif
