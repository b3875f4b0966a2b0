#include <iostream>

#include "upds/cli.hpp"

int main(int argc, char** argv)
{
    return upds::cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
