#include "commands.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
  try {
    return lowdisc::cli::run(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
}
