#include "gdyn/cli.hpp"

int main(int argc, char** argv) { return gdyn::run(argc, argv); }
