#include <accx/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  return accx::cli::main({argv + 1, argv + argc}, std::cout, std::cerr);
}
