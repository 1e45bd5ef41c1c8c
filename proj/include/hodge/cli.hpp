// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace hodge {

// Exit codes: 0 success, 1 validation failure, 2 mathematical precondition
// violated, 3 I/O or parse error. The default output format comes from
// HODGECALC_FORMAT (text or json).
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace hodge
