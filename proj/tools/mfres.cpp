#include <iostream>
#include <string>
#include <vector>

#include "mfres/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mfres::cli::run(args, std::cout, std::cerr);
}
