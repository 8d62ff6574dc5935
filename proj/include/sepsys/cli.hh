#ifndef SEPSYS_CLI_HH
#define SEPSYS_CLI_HH

#include <iosfwd>
#include <string>
#include <vector>

namespace sepsys {

// Exit codes: 0 success, 1 violation found, 2 input or parse error.
// `args` excludes the program name.
int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}

#endif
