#include <iostream>

#include "gravidec/cli.hpp"

int main(int argc, char** argv) {
  return gravidec::cli::main(argc, argv, std::cout, std::cerr);
}
