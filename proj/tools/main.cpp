#include "qconv/cli.hpp"

int main(int argc, char** argv) { return qconv::cli::run(argc, argv); }
