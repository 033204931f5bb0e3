#include "nclat/cli.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const nclat::RunResult result = nclat::run(args);
  if (!result.error.empty()) {
    std::cerr << "error: " << result.error << "\n";
    return result.exit_code;
  }
  if (result.out_path.empty()) {
    std::cout << result.rendered;
  } else {
    std::ofstream out(result.out_path);
    if (!out) {
      std::cerr << "error: cannot open " << result.out_path << " for writing\n";
      return 2;
    }
    out << result.rendered;
  }
  return result.exit_code;
}
