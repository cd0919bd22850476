#include <iostream>
#include <string>
#include <vector>

#include "braille/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return braille::cli::run(args, std::cin, std::cout, std::cerr);
}
