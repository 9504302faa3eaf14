#include "multinet/cli.hpp"

int main(int argc, char** argv) { return multinet::cli_main(argc, argv); }
