#include <iostream>

#include "mnorm/cli.hpp"

int main(int argc, char** argv) {
  return mnorm::cli::run(argc, argv, std::cout, std::cerr);
}
