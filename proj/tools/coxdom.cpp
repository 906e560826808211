#include "coxdom/cli.hpp"

int main(int argc, char** argv) { return coxdom::cli_main(argc, argv); }
