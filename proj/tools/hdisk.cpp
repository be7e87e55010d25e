#include "hdisk/cli.hpp"

int main(int argc, char** argv) { return hdisk::cli_main(argc, argv); }
