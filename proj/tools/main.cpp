#include "ncbsar/cli.hpp"

int main(int argc, char** argv) { return ncb::cli_main(argc, argv); }
