#include "exl/cli.hpp"

int main(int argc, char** argv) { return exl::run_cli(argc, argv); }
