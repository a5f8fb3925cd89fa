#include <iostream>
#include <string>
#include <vector>

#include "ssc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ssc::run_cli(args, std::cout, std::cerr);
}
