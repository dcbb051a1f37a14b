#ifndef TEXT2ANIM_CLI_H_
#define TEXT2ANIM_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace text2anim {

// Runs the command line `args` (without the program name) and returns the
// process exit code: 0 ok, 1 usage, 2 parse, 3 assets, 4 render.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace text2anim

#endif  // TEXT2ANIM_CLI_H_
