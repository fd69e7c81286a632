#include <iostream>
#include <string>
#include <vector>

#include "../src/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return geodepth::cli::run(args, std::cout, std::cerr);
}
