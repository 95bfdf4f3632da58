#include <iostream>

#include "primorial/cli.hpp"

int main(int argc, char** argv)
{
    return primlab::run(argc, argv, std::cout, std::cerr);
}
