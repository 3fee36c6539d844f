// cli.hpp -- the command-line front end: one subcommand per library
// operation, JSON in and out, certificates that re-verify from their own
// contents
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cantor/json_io.hpp"

namespace cantor {

// Runs one subcommand (args exclude the program name) writing a single JSON
// document to `out` and diagnostics to `err`. Exit code 0 on success, 1 on a
// verified negative result, 2 on usage errors or malformed input, 3 when a
// search budget or resource limit runs out before a verdict.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Re-checks every claim a certificate makes, using only the document itself;
// `detail` names the first discrepancy. Dispatches on the "kind" field.
bool verify_certificate(const Json& certificate, std::string& detail);

}  // namespace cantor
