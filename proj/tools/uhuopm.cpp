#include <iostream>
#include <string>
#include <vector>

#include "uhuopm/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return uhuopm::cli::run(args, std::cout, std::cerr);
}
