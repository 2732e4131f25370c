#include "qwalk/run_io.hpp"

int main(int argc, char** argv) { return qwalk::run_cli(argc, argv); }
