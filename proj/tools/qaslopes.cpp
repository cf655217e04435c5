#include <iostream>
#include <string>
#include <vector>

#include "qaslopes/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qaslopes::run(args, std::cout, std::cerr);
}
