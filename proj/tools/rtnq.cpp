#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "rtnq/cli/commands.hpp"

int main(int argc, char** argv) {
  try {
    return rtnq::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
