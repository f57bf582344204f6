#include "nzeta/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
	return nzeta::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
