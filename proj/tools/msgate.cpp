#include "msgate/scan.hpp"

int main(int argc, char** argv) { return msgate::cli_main(argc, argv); }
