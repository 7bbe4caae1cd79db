#include "dclab/cli.hpp"

int main(int argc, char** argv) { return dclab::run_cli(argc, argv); }
