#include "cliquesdp/cli.hpp"

int main(int argc, char** argv) { return cliquesdp::run_cli(argc, argv); }
