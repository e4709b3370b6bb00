#include <iostream>
#include <string>
#include <vector>

#include "weaklabel/cli.h"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return weaklabel::run_cli(args, std::cout, std::cerr);
}
