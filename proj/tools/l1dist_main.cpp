#include <iostream>
#include <string>
#include <vector>

#include "l1dist/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return l1dist::cli_main(args, std::cout, std::cerr);
}
