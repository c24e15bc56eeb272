#include "efh/cli.hpp"

#include <iostream>
#include <iterator>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string stdin_text;
  for (const auto& a : args) {
    if (a == "-") {
      stdin_text.assign(std::istreambuf_iterator<char>(std::cin), {});
      break;
    }
  }
  const efh::cli::Output out = efh::cli::run(args, stdin_text);
  std::cout << out.out;
  std::cerr << out.err;
  return out.exit_code;
}
