#include <iostream>
#include <string>
#include <vector>

#include "qdiss/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qdiss::cli::run(args, std::cout, std::cerr);
}
