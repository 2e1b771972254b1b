#include "wnlse/cli.hpp"

int main(int argc, char** argv) { return wnlse::cli_main(argc, argv); }
