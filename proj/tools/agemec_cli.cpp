// Experiment runner CLI. Subcommands are wired up in experiment.hpp; this
// file only parses flags.
#include <cstdio>

int main() {
    std::puts("agemec-cli: subcommands not wired yet");
    return 1;
}
