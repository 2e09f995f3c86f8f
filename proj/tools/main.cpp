#include <iostream>

#include "seqgamma/cli.hpp"

int main(int argc, char** argv) {
  return seqgamma::run_cli(argc, argv, std::cout, std::cerr);
}
