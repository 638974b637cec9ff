#include <iostream>
#include <string>
#include <vector>

#include "dicontainer/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto outcome = dicontainer::cli::run(args);
  const bool to_file = [&] {
    for (const auto& a : args)
      if (a == "--out" || a.starts_with("--out=")) return true;
    return false;
  }();
  if (!to_file || outcome.exit_code == dicontainer::cli::usage) std::cout << outcome.document;
  if (!outcome.diagnostic.empty()) std::cerr << "dicontainer: " << outcome.diagnostic << "\n";
  return outcome.exit_code;
}
