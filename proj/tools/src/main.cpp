#include <iostream>
#include <string>
#include <vector>

#include "sic_calc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sic_calc::run(args, std::cout, std::cerr);
}
