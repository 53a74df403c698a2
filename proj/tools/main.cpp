#include "cli/commands.h"

int main(int argc, char** argv) { return urltool::run(argc, argv); }
