#include "suite.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  f2lab::acceptance::Options options;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc)
      options.seed = std::stoull(argv[++i]);
    else
      options.only.push_back(std::stoi(a));
  }
  const auto results = f2lab::acceptance::run_all(options, &std::cerr);
  return f2lab::acceptance::print_table(std::cout, results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
