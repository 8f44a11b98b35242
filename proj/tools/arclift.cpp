#include <iostream>
#include <string>
#include <vector>

#include "arclift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  arclift::CliResult result = arclift::run_cli(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
