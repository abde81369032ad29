// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(scriptsmith::cli::main());
}
