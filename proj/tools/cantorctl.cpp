// cantorctl.cpp -- thin binary entry point over run_command
#include <iostream>
#include <string>
#include <vector>

#include "cantor/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return cantor::run_command(args, std::cout, std::cerr);
}
