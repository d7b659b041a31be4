#include <iostream>
#include <string>
#include <vector>

#include <diffrakt/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return diffrakt::cli::run(std::move(args), std::cout, std::cerr);
}
