// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/cli.hpp"

int main(int argc, char** argv) { return allendl::run_cli(argc, argv); }
