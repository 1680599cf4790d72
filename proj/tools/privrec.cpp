#include "privrec/cli.hpp"

int main(int argc, char** argv) { return privrec::cli::main(argc, argv); }
