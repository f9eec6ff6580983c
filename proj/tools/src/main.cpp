// SPDX-License-Identifier: Apache-2.0
#include "omx/cli/commands.hpp"

int main(int argc, char** argv) { return omx::cli::run_cli(argc, argv); }
