#include <iostream>
#include <string>
#include <vector>

#include "isect/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return isect::run(args, std::cout, std::cerr);
}
