#include <iostream>

#include "rds_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rds::cli::run(args, std::cout, std::cerr);
}
