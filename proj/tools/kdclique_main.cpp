#include "kdc/cli.hpp"

int main(int argc, char** argv) { return kdc::cli_main(argc, argv); }
