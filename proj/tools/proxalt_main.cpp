#include "proxalt/cli.hpp"

int main(int argc, char** argv) { return proxalt::run_cli(argc, argv); }
