#include "patentcite/cli.hpp"

int main(int argc, char** argv) { return patentcite::run(argc, argv); }
