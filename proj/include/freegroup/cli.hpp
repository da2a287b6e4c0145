#ifndef FREEGROUP_CLI_HPP_
#define FREEGROUP_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace freegroup {

  // Runs one command.  args excludes the program name.  Returns 0 with a
  // JSON document on `out`, 2 on usage errors (message on `err`), and 1 on
  // computation errors with a JSON error object on `out`.
  int run_cli(std::vector<std::string> const& args, std::istream& in,
              std::ostream& out, std::ostream& err);

}  // namespace freegroup

#endif  // FREEGROUP_CLI_HPP_
