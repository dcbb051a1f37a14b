#include <iostream>
#include <string>
#include <vector>

#include "text2anim/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return text2anim::RunCli(args, std::cout, std::cerr);
}
