#include <iostream>
#include <string>
#include <vector>

#include "flagein/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string out, err;
    int code = flagein::cli::main_entry(args, out, err);
    std::cout << out;
    std::cerr << err;
    return code;
}
