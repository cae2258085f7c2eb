#include <iostream>

#include "syzmirror/cli.hpp"

int main(int argc, char **argv)
{
    return syzmirror::cli::main(argc, argv, std::cout, std::cerr);
}
