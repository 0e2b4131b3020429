#include <iostream>
#include <string>
#include <vector>

#include "summa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return summa::run_cli(args, std::cout, std::cerr);
}
