#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return fo2kc::run_cli(argc, argv, std::cout, std::cerr);
}
