#include <iostream>
#include <string>
#include <vector>

#include "bisemi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bisemi::cli::main_entry(args, std::cout, std::cerr);
}
