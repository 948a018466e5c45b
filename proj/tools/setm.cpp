#include "setm/cli.hpp"

int main(int argc, char** argv) { return setm::dispatch(argc, argv); }
